#pragma once

#include <array>
#include <cstdint>

#include "cubelock/natural.hpp"

namespace cubelock {

constexpr std::size_t kBlockBytes = 16;
using Block = std::array<std::uint8_t, kBlockBytes>;

std::array<std::uint8_t, 32> sha256(const std::uint8_t* data, std::size_t len);
inline std::array<std::uint8_t, 32> sha256(const Bytes& b) { return sha256(b.data(), b.size()); }

// First 16 bytes of SHA-256, as lowercase hex (32 chars).
std::string fingerprint_hex(const Bytes& data);

// AES-256 block primitive. Immutable after construction; safe for
// concurrent use.
class Aes256 {
public:
    explicit Aes256(const std::array<std::uint8_t, 32>& key);
    ~Aes256();
    Aes256(const Aes256& other);
    Aes256& operator=(const Aes256&) = delete;

    void encrypt_block(const std::uint8_t in[16], std::uint8_t out[16]) const;
    void decrypt_block(const std::uint8_t in[16], std::uint8_t out[16]) const;

    // ECB over a whole buffer (len must be a multiple of 16). Uses the
    // hardware-accelerated path; worthwhile from a few blocks up.
    void encrypt_ecb(const std::uint8_t* in, std::uint8_t* out, std::size_t len) const;
    void decrypt_ecb(const std::uint8_t* in, std::uint8_t* out, std::size_t len) const;

private:
    struct Impl;
    Impl* impl_;
};

// Deterministic PRF keyed by 32 bytes of key material (shorter or longer
// material is compressed with SHA-256). Coins and round keys for the
// permutation families all come from here: fixed-size inputs take a single
// block-cipher call, variable-length positions are compressed with a
// CBC-MAC, and key/stream expansion runs the cipher in counter mode.
class Prf {
public:
    explicit Prf(const Bytes& key_material);

    // Full PRF block over (tag, level, round, position). Short positions
    // take a single cipher call; longer ones are chained block by block.
    Block mac(std::uint8_t tag, std::uint32_t level, std::uint32_t round,
              const Natural& position) const;

    // One pseudorandom bit from (tag, level, round, position).
    bool coin(std::uint8_t tag, std::uint32_t level, std::uint32_t round,
              const Natural& position) const {
        return (mac(tag, level, round, position)[0] & 1) != 0;
    }

    // Uniform value in [0, bound) derived from (tag, level, round).
    // Deterministic; reduction bias is irrelevant at our security level.
    Natural uniform(std::uint8_t tag, std::uint32_t level, std::uint32_t round,
                    const Natural& bound) const;

    // Counter-mode keystream for (tag, nonce).
    void stream(std::uint8_t tag, std::uint64_t nonce, std::uint8_t* out, std::size_t len) const;

    // Subsidiary 32-byte key (for two-key constructions).
    std::array<std::uint8_t, 32> subkey(std::uint8_t tag) const;

    const Aes256& cipher() const { return aes_; }

private:
    Block cbc_mac(const std::uint8_t* msg, std::size_t len) const;
    Aes256 aes_;
};

} // namespace cubelock
