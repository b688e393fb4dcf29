#pragma once

#include <functional>
#include <optional>

#include "cubelock/bigmath.hpp"
#include "cubelock/natural.hpp"
#include "cubelock/puzzle.hpp"

namespace cubelock {

// Algebraic attack on the two-stage swapping-neighbors chain
// c = ((m^3 + s1)^3 + s2) mod p with signs s1, s2 decided by parity.
// When the signs come out (+1, -1) the ciphertext satisfies
// c = m^9 + 3m^6 + 3m^3, and gcd(z^9 + 3z^6 + 3z^3 - c, z^(p-1) - 1)
// is exactly z - m; that happens for roughly a quarter of all messages.
// Returns the recovered m only after re-encrypting it through the chain
// matches c; anything else reports failure (nullopt).
std::optional<Natural> gcd_attack_swap_neighbors(const Natural& p, const Natural& c);

// The chain the attack targets (cube, parity shift, cube, parity shift).
Natural swap_neighbors_chain2(const Natural& p, const Natural& m);

constexpr std::uint64_t kGcdAttackPrimeCap = 1 << 20;

// Discrete-log oracle interface: log of target in base `base` mod p.
using DlogOracle =
    std::function<std::optional<Natural>(const Natural& base, const Natural& target, const Natural& p)>;

// Exhaustive oracle for p up to 2^24.
std::optional<Natural> brute_force_dlog(const Natural& base, const Natural& target,
                                        const Natural& p);

struct FixedBaseAttackResult {
    Natural recovered;   // the padded plaintext element
    Natural exponent;    // log_h(c) supplied by the oracle
    DepthTrace trace;    // depth of the table-combination tree
    std::size_t table_entries = 0;
};

// The precomputation bypass: with h = g^3 and x = log_h(c), the padded
// plaintext is g^x, and a table of g^(2^i) collapses that exponentiation
// to a log-depth combination tree instead of one squaring per bit.
FixedBaseAttackResult fixed_base_attack_demo(const PuzzleParams& params, const Ciphertext& ct,
                                             const Natural& g, const DlogOracle& oracle);

// Smallest generator of Z_p^* for a safe prime p.
Natural find_generator(const Natural& p);

// n(n-1) bits expressed in MiB: the storage for a full g^(2^i) table.
double fixed_base_table_mib(std::uint64_t n_bits);

// Expected bit size of a uniform exponent in [1, p-1]:
//   n - 2 + (2(p - 2^(n-1)) + n - 1) / (p - 1)
mpq_class expected_exponent_bits(const Natural& p);

// Batched-reduction cost model: reduce only every m-th multiplication,
//   (k/m) * (sum_{i<m} M(2^i n) + R(2^m n)).
using CostFn = std::function<double(double)>;
double reduction_schedule_cost(const CostFn& mul_cost, const CostFn& red_cost, double n,
                               std::uint64_t k, std::uint64_t m);
std::uint64_t reduction_schedule_argmin(const CostFn& mul_cost, const CostFn& red_cost, double n,
                                        std::uint64_t k);

} // namespace cubelock
