#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "cubelock/errors.hpp"
#include "cubelock/natural.hpp"
#include "cubelock/rng.hpp"

namespace cubelock {

// Instrumentation record for a modular computation: total multiplication
// count and the length of the longest dependency chain of multiplications
// (parallel branches record max of their inputs plus one). Domain
// conversions (Montgomery in/out) are not counted; only the multiplications
// of the exponentiation itself are.
struct DepthTrace {
    std::uint64_t sequential_depth = 0;
    std::uint64_t total_mults = 0;
};

enum class Reduction { Barrett, Montgomery };

// Precomputed Barrett context: q = floor(2^shift / modulus), valid for
// inputs below 2^shift.
class BarrettCtx {
public:
    // max_input_bits defaults to twice the modulus size (enough for one
    // product of reduced values).
    explicit BarrettCtx(Natural modulus, std::size_t max_input_bits = 0);

    // a mod modulus in exactly 2 multiplications and at most 2 subtractions.
    Natural reduce(const Natural& a) const;
    Natural mul(const Natural& x, const Natural& y) const { return reduce(Natural(x * y)); }

    const Natural& modulus() const { return modulus_; }
    std::size_t shift() const { return shift_; }
    const Natural& q() const { return q_; }

private:
    Natural modulus_;
    std::size_t shift_;
    Natural q_;
};

// Precomputed Montgomery context for an odd modulus: R = 2^rbits > modulus,
// neg_inv = -modulus^-1 mod R.
class MontCtx {
public:
    explicit MontCtx(Natural modulus, std::size_t rbits = 0);

    // a * R^-1 mod modulus for a < R*modulus.
    Natural redc(const Natural& a) const;
    // x -> xR mod modulus and back; from(to(x)) == x.
    Natural to_domain(const Natural& x) const;
    Natural from_domain(const Natural& x) const { return redc(x); }
    Natural mul(const Natural& x, const Natural& y) const { return redc(Natural(x * y)); }

    const Natural& modulus() const { return modulus_; }
    std::size_t rbits() const { return rbits_; }
    const Natural& neg_inv() const { return neg_inv_; }

private:
    Natural modulus_;
    std::size_t rbits_;
    Natural r_mask_;
    Natural neg_inv_;
};

struct PowmodResult {
    Natural value;
    DepthTrace trace;
};

// Fixed-window (k-ary) modular exponentiation: a table of 2^w powers is
// built first, then each w-bit window costs w squarings plus one table
// multiplication. The top window is zero-padded when the exponent length
// is not a multiple of w. Results are identical across window widths and
// reduction strategies.
PowmodResult powmod_window(const Natural& base, const Natural& exp, const Natural& modulus,
                           unsigned w = 6, Reduction strategy = Reduction::Barrett);

// Table memory cap for powmod_window (entries * modulus bytes).
constexpr std::uint64_t kPowmodTableCapBytes = 1ull << 28;

// Precomputed powers base^(2^i) mod modulus for i in [0, len). Immutable.
class FixedBaseTable {
public:
    FixedBaseTable(Natural modulus, Natural base, std::size_t max_exp_bits = 0);

    const Natural& modulus() const { return modulus_; }
    const Natural& base() const { return base_; }
    std::size_t size() const { return powers_.size(); }
    const Natural& power(std::size_t i) const { return powers_.at(i); }

    Bytes serialize() const;
    static FixedBaseTable deserialize(const Bytes& data);

private:
    FixedBaseTable() = default;
    Natural modulus_;
    Natural base_;
    std::vector<Natural> powers_;
};

// Serialized size in bits of a table with `entries` entries over an n-bit
// modulus: n * entries. The full decryption-bypass table has n-1 entries.
inline Natural fixed_base_table_bits(std::uint64_t modulus_bits, std::uint64_t entries) {
    return Natural(modulus_bits) * Natural(entries);
}

// base^exp via the precomputed table: the powers selected by the set bits
// of exp are combined in a balanced tree, so the longest multiplication
// chain is ceil(log2(popcount(exp))) instead of one per exponent bit.
// With parallel=true tree levels are evaluated by concurrent workers; the
// result is identical to sequential evaluation.
PowmodResult powmod_fixed_base(const FixedBaseTable& table, const Natural& exp,
                               bool parallel = false);

// Toom-Cook multiplication, split/evaluate/interpolate form. k=2 is
// Karatsuba ({0,1,inf}); k=3 evaluates at {0,1,-1,2,inf} with hardcoded
// interpolation. Reference implementation, checked against the backend.
Natural mul_toom(const Natural& a, const Natural& b, unsigned k);

// Miller-Rabin with `rounds` random bases (error < 4^-rounds).
bool miller_rabin(const Natural& n, unsigned rounds, RandomSource& rng);

// p and (p-1)/2 both probable primes; 64 rounds each (error < 2^-128).
bool is_safe_prime(const Natural& p, unsigned rounds = 64);

// Random safe prime with exactly `bits` bits: candidates p = 2q+1 for
// random (bits-1)-bit q, sieved jointly on q and p, then tested with 64
// Miller-Rabin rounds on both parts. Deterministic given a deterministic
// rng. `workers` > 1 tests sieve survivors concurrently; the first
// success in candidate order is returned, so the result does not depend
// on scheduling.
Natural gen_safe_prime(unsigned bits, RandomSource& rng, unsigned workers = 1);

} // namespace cubelock
