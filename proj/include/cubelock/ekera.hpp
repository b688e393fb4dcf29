#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "cubelock/lattice.hpp"
#include "cubelock/natural.hpp"
#include "cubelock/rng.hpp"

namespace cubelock {

// Toy-scale instance of the short-register discrete-log experiment:
// find d with g^d = x mod p using an m+l bit and an l bit register,
// l = ceil(m/s). Sizes are capped so the full quantum state can be
// enumerated classically and the output distribution computed exactly.
struct EkeraInstance {
    std::uint32_t p = 0;
    std::uint32_t g = 0; // must generate Z_p^*
    std::uint32_t x = 0; // target
    std::uint32_t s = 1; // trade-off factor
    std::uint32_t m = 0; // 2^(m-1) <= p < 2^m
    std::uint32_t l = 0; // ceil(m/s)
    std::uint32_t d = 0; // log_g(x), found by enumeration

    static EkeraInstance make(std::uint32_t p, std::uint32_t g, std::uint32_t x, std::uint32_t s);
};

constexpr std::uint32_t kEkeraStateBitsCap = 24; // m + 2l

// Exact post-measurement distribution over the pair (j, k) and a sampler
// for it. The distribution is computed once per instance; sampling is
// cheap afterwards.
class EkeraSimulator {
public:
    explicit EkeraSimulator(const EkeraInstance& inst, unsigned workers = 2);

    const EkeraInstance& instance() const { return inst_; }
    // P(j, k), flattened as j * 2^l + k.
    const std::vector<double>& distribution() const { return dist_; }
    double prob(std::uint64_t j, std::uint64_t k) const;
    double total_probability() const { return total_; } // pre-normalization mass

    std::pair<std::uint64_t, std::uint64_t> sample(RandomSource& rng) const;

    // Total-variation distance between the sampling weights and the exact
    // distribution (floating-point fidelity of the sampler itself).
    double sampler_tv() const;

private:
    EkeraInstance inst_;
    std::vector<double> dist_; // normalized
    std::vector<double> cdf_;
    double total_ = 0;
};

// Convenience form: builds the simulator and draws one pair.
std::pair<std::uint64_t, std::uint64_t> ekera_simulate(const EkeraInstance& inst,
                                                       RandomSource& rng);

// Lattice post-processing: builds v and the (n+1)-dimensional basis from
// the measured pairs, solves CVP with Babai's nearest plane, and reads the
// log out of the last coordinate (normalized into [0, group_order)).
// Returns nullopt when the basis degenerates.
std::optional<Natural> ekera_postprocess(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& pairs,
                                         std::uint32_t m, std::uint32_t s,
                                         const Natural& group_order);

} // namespace cubelock
