#pragma once

#include <string>
#include <vector>

#include "cubelock/natural.hpp"

namespace cubelock {

// A known safe prime in compact k*2^e+d form. Safe-prime generation at
// tens of thousands of bits is impractical, so setup consults this list
// for large targets.
struct CuratedPrime {
    std::string expr; // "k*2^e+d" / "k*2^e-d"
    unsigned bits;
    Natural value() const;
};

// Parse "k*2^e+d" or "k*2^e-d" (d optional).
Natural eval_prime_expr(const std::string& expr);

// Bundled list: the 70034-bit reference prime plus the three primes whose
// bit size is one below a multiple of 128 (block-cipher friendly).
const std::vector<CuratedPrime>& curated_primes();

// Bundled list plus any expressions from `path` (one per line, # comments).
std::vector<CuratedPrime> load_curated_primes(const std::string& path);

} // namespace cubelock
