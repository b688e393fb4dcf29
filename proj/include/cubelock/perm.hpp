#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "cubelock/crypto.hpp"
#include "cubelock/natural.hpp"

namespace cubelock {

enum class PermKind {
    SwapNeighbors,
    PairMap,
    CycleWalkFpe,
    BothEnds,
    Thorp,
    SwapOrNot,
    MixAndCut,
};

const char* perm_kind_name(PermKind kind);
PermKind perm_kind_from_name(const std::string& name);

// Number of block-cipher / round-function passes spent cycle walking.
struct WalkStats {
    std::uint64_t walks = 0;
};

// A keyed bijection on {0, .., N-1}. Immutable after construction; all
// evaluations are pure and safe to run concurrently.
//
// Domain handling per family:
//   swap-neighbors  native on any N (odd N fixes 0; the paper's x+-1 map)
//   pair-map        N = p^2, a pair (x, y) encoded as x*p + y
//   cycle-walk-fpe  binary domain of ceil-to-128 bits walked down to N;
//                   practical only when that gap is small (the curated
//                   primes sit one bit under a multiple of 128)
//   both-ends       binary domain of exactly bitlen(N-1) bits, blockwise
//                   two-pass encryption, walked down to N
//   thorp           power-of-two deck >= N, walked
//   swap-or-not     native on any N
//   mix-and-cut     power-of-two deck >= N, walked; recurses on the lower
//                   half, expected two shuffle passes per evaluation
class Permutation {
public:
    // rounds = 0 picks the default R = bitlen(N) for the shuffles.
    // pair_base must be set for PairMap (the p with N = p^2).
    Permutation(PermKind kind, Natural domain_size, Bytes key, std::uint32_t rounds = 0,
                Natural pair_base = 0);

    Natural forward(const Natural& x) const;
    Natural inverse(const Natural& y) const;
    Natural forward(const Natural& x, WalkStats& stats) const;
    Natural inverse(const Natural& y, WalkStats& stats) const;

    PermKind kind() const { return kind_; }
    const Natural& domain_size() const { return domain_; }
    std::uint32_t rounds() const { return rounds_; }
    const Bytes& key() const { return key_; }
    const Natural& pair_base() const { return pair_base_; }

private:
    Natural eval(const Natural& v, bool fwd, WalkStats* stats) const;
    Natural both_ends_pass(const Natural& s, bool fwd) const;
    Natural swap_or_not(Natural x, const Natural& size, std::uint32_t level, bool inverse) const;

    PermKind kind_;
    Natural domain_;
    Bytes key_;
    std::uint32_t rounds_;
    Natural pair_base_;
    Prf prf_;

    // derived at construction
    std::size_t bin_bits_ = 0;  // binary working domain, when one is used
    Natural bin_size_;
    Natural c1_, c2_;           // pair-map constants
    std::unique_ptr<Aes256> ecb1_, ecb2_;
};

// Small-block PRP (1..127 bits) built from the PRF; used where a 128-bit
// block cipher cannot fit the domain.
Natural feistel_encrypt(const Prf& prf, std::uint8_t tag, unsigned bits, const Natural& x);
Natural feistel_decrypt(const Prf& prf, std::uint8_t tag, unsigned bits, const Natural& x);

} // namespace cubelock
