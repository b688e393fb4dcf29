#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cubelock/bigmath.hpp"
#include "cubelock/perm.hpp"
#include "cubelock/rng.hpp"

namespace cubelock {

struct ChainStage {
    PermKind kind;
    std::uint32_t rounds = 0; // 0 = default (bit length of p)
    Bytes key;
};

// An interleaved delay chain over a fixed safe prime: each stage applies
// its keyed permutation and then the cube map. Applying is cheap (cubings
// and permutations); inverting costs one full decryption exponent per
// stage. Stages run in list order; inversion walks them backwards.
class ChainSpec {
public:
    ChainSpec(Natural p, std::vector<ChainStage> stages);

    // Fresh 32-byte stage keys from rng.
    static ChainSpec build(const Natural& p, const std::vector<std::pair<PermKind, std::uint32_t>>& kinds,
                           RandomSource& rng);

    const Natural& p() const { return p_; }
    const Natural& b() const { return b_; }
    const std::vector<ChainStage>& stages() const { return stages_; }
    const std::vector<Permutation>& permutations() const { return perms_; }
    // First 16 bytes of SHA-256 over the canonical file body, hex.
    const std::string& chain_id() const { return chain_id_; }
    // True when the stages work over (Z_p)^2 instead of Z_p.
    bool pair_domain() const { return pair_domain_; }
    const Natural& value_domain() const { return value_domain_; }

    std::string to_text() const;
    static ChainSpec from_text(const std::string& text);

private:
    Natural p_;
    Natural b_;
    std::vector<ChainStage> stages_;
    std::vector<Permutation> perms_;
    std::string chain_id_;
    bool pair_domain_ = false;
    Natural value_domain_;
};

// h(x): per stage, permutation then cubing (componentwise over pairs).
Natural chain_apply(const ChainSpec& spec, const Natural& x);
// Inverse: per stage backwards, cube root (exponent b) then inverse
// permutation. The trace accumulates across the stage exponentiations.
Natural chain_invert(const ChainSpec& spec, const Natural& c, DepthTrace* trace = nullptr,
                     unsigned window = 6, Reduction strategy = Reduction::Montgomery);

// Median wall times for the Table-1 comparison: one cubing, one cycle-walk
// FPE stage, and one full run of each shuffle at R rounds.
struct ChainBenchReport {
    unsigned prime_bits = 0;
    std::uint32_t rounds = 0;
    double cubing_s = 0;
    double fpe_s = 0;
    double thorp_s = 0;
    double swap_or_not_s = 0;
    double mix_and_cut_s = 0;
};

ChainBenchReport chain_bench(const Natural& p, std::uint32_t rounds = 0, unsigned trials = 5);

std::string chain_bench_table(const ChainBenchReport& report);

} // namespace cubelock
