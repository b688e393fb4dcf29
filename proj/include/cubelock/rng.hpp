#pragma once

#include <array>
#include <cstdint>
#include <memory>

#include "cubelock/natural.hpp"

namespace cubelock {

// Entropy source. Implementations must be safe to call from a single thread;
// share across threads only behind external synchronization.
class RandomSource {
public:
    virtual ~RandomSource() = default;
    virtual void fill(std::uint8_t* out, std::size_t len) = 0;

    std::uint64_t next_u64();
    // Uniform in [0, bound), bound > 0, by rejection sampling.
    Natural below(const Natural& bound);
    // Uniform nbits-bit value (top bit not forced).
    Natural bits(std::size_t nbits);
    Bytes bytes(std::size_t len);
};

// OS entropy (getrandom / /dev/urandom).
class SystemRandom final : public RandomSource {
public:
    void fill(std::uint8_t* out, std::size_t len) override;
};

// Deterministic generator: AES-256 in counter mode keyed by SHA-256 of the
// seed bytes. Identical seeds yield identical streams on every platform.
class CtrDrbg final : public RandomSource {
public:
    explicit CtrDrbg(const Bytes& seed);
    ~CtrDrbg();
    CtrDrbg(const CtrDrbg&) = delete;
    CtrDrbg& operator=(const CtrDrbg&) = delete;

    void fill(std::uint8_t* out, std::size_t len) override;

    // Independent deterministic substream (domain-separated by label).
    std::unique_ptr<CtrDrbg> fork(std::uint64_t label) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace cubelock
