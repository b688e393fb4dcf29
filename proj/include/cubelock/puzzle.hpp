#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "cubelock/bigmath.hpp"
#include "cubelock/natural.hpp"
#include "cubelock/rng.hpp"

namespace cubelock {

// Public puzzle parameters (p, b, T) plus derived metadata. b is the
// smallest exponent with x^(3b) = x for all x in Z_p, i.e. (1 + 2(p-1))/3.
struct PuzzleParams {
    Natural p;
    Natural b;
    double T = 0;      // target delay, seconds
    double lambda = 0; // calibrated squarings per second
    unsigned n = 0;    // bit length of p
    std::string fingerprint; // 32 hex chars: first 16 bytes of SHA-256(p)

    // Builds b and metadata from a safe prime. validate runs the full
    // probabilistic safe-prime check (skip for very large known primes).
    static PuzzleParams from_prime(Natural p, double T, double lambda, bool validate = true);
};

struct SetupInfo {
    bool curated = false;        // picked from the curated list
    long target_bits = 0;        // floor(log2 p) asked for (lambda*T)
    long deviation_bits = 0;     // actual floor(log2 p) minus target
};

// Preparation phase: a safe prime with floor(log2 p) = lambda*T, generated
// for moderate sizes and taken from the curated list above 16384 bits
// (the deviation from the target is reported, not hidden).
PuzzleParams setup(double T, double lambda, RandomSource& rng, SetupInfo* info = nullptr,
                   const std::string& curated_path = "", unsigned workers = 1);

constexpr unsigned kDefaultSeedBits = 256;
constexpr unsigned kMinSetupBits = 64;
constexpr unsigned kCuratedThresholdBits = 16384;

// Padded plaintext layout, assembled from the least significant bit up:
//
//   [32-bit message byte count][message bytes][seed bits][fill][1 at n-2]
//
// The fill bits come from a generator keyed by the seed, the marker bit
// pins x into [2^(n-2), 2^(n-1)), and unpadding needs no seed because the
// length field and message sit below everything else.
Natural pad(const Bytes& message, const Bytes& seed_bits, unsigned seed_bit_len,
            const PuzzleParams& params);
Bytes unpad(const Natural& x, const PuzzleParams& params);

// Largest message (bytes) that fits under the marker bit with an l-bit seed.
long max_message_bytes(const PuzzleParams& params, unsigned seed_bit_len);

struct Ciphertext {
    Natural c;
    std::string fingerprint; // binds the ciphertext to its prime
    unsigned seed_bits = kDefaultSeedBits;
    std::string chain_id = "none";
};

struct EncryptResult {
    Ciphertext ct;
    DepthTrace trace; // exactly two multiplications on the critical path
};

EncryptResult encrypt(const Bytes& message, const PuzzleParams& params, RandomSource& rng,
                      unsigned seed_bit_len = kDefaultSeedBits);

// Test hook: cube a caller-supplied element, bypassing the padding.
Natural encrypt_value(const PuzzleParams& params, const Natural& x);

struct DecryptResult {
    Bytes message;
    DepthTrace trace;
    double seconds = 0;
};

DecryptResult decrypt(const Ciphertext& ct, const PuzzleParams& params, unsigned window = 6,
                      Reduction strategy = Reduction::Montgomery);

// c^b mod p and its trace, without unpadding (used by tests and the
// fixed-base bypass demo).
PowmodResult decrypt_value(const PuzzleParams& params, const Natural& c, unsigned window = 6,
                           Reduction strategy = Reduction::Montgomery);

// Smallest seed length l strictly satisfying
//   l > log2(C) + log2(n-1) - log2(eps) - 1
// against C concurrent guessers and acceptable guess probability eps.
// Each log term is rounded up, matching how the bound is quoted.
unsigned seed_length_bound(double concurrent_guessers, unsigned prime_bits, double epsilon);

// Brute-force evaluation of the decryption-exponent statistics over Z_m:
// for every x the exponent b(x) = 3^-1 mod ord(x) (when it exists) and its
// bit size. K^eps counts the elements whose exponent is more than eps bits
// below the hardest one; safe primes make it exactly 2 ({1, -1}).
struct Theorem1Result {
    std::uint32_t m = 0;
    std::uint64_t unit_count = 0;          // |Z_m^*|
    std::uint32_t h_bits = 0;              // H_m
    std::map<std::uint32_t, std::uint64_t> bits_histogram; // exponent bits -> #elements
    std::uint64_t no_inverse_count = 0;    // ord(x) divisible by 3

    std::uint64_t h_eps(std::uint32_t eps) const; // |H^eps_m|
    std::uint64_t k_eps(std::uint32_t eps) const; // |Z_m^*| - |H^eps_m|
};

Theorem1Result theorem1_oracle(std::uint32_t m);

constexpr std::uint32_t kTheorem1Cap = 10000;

} // namespace cubelock
