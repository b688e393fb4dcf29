#pragma once

#include <vector>

#include <gmpxx.h>

#include "cubelock/natural.hpp"

namespace cubelock {

using IntVec = std::vector<mpz_class>;
using RatVec = std::vector<mpq_class>;

// Row-major integer lattice basis. Desk-scale dimensions only; everything
// below runs in exact rational arithmetic.
struct LatticeBasis {
    std::vector<IntVec> rows;

    std::size_t dim() const { return rows.empty() ? 0 : rows.front().size(); }
    std::size_t count() const { return rows.size(); }
};

struct GramSchmidt {
    std::vector<RatVec> ortho;            // b*_i
    std::vector<std::vector<mpq_class>> mu; // mu[i][j], j < i
    std::vector<mpq_class> norm2;         // ||b*_i||^2
};

GramSchmidt gram_schmidt(const LatticeBasis& basis);

// Exact LLL reduction with delta = 3/4. Throws ParameterError on a
// dependent input basis.
LatticeBasis lll_reduce(LatticeBasis basis);

// Nearest-plane CVP approximation: LLL, Gram-Schmidt, then the rounding
// descent; returns the lattice vector t - x.
IntVec babai_cvp(const LatticeBasis& basis, const RatVec& target);

mpz_class round_nearest(const mpq_class& q);

} // namespace cubelock
