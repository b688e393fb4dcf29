#include "cubelock/lattice.hpp"

#include "cubelock/errors.hpp"

namespace cubelock {

mpz_class round_nearest(const mpq_class& q) {
    // floor(q + 1/2); ties round up
    mpq_class shifted = q + mpq_class(1, 2);
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), shifted.get_num().get_mpz_t(), shifted.get_den().get_mpz_t());
    return r;
}

namespace {

mpq_class dot_qq(const RatVec& a, const RatVec& b) {
    mpq_class s = 0;
    for (std::size_t i = 0; i < a.size(); i++)
        s += a[i] * b[i];
    return s;
}

mpq_class dot_zq(const IntVec& a, const RatVec& b) {
    mpq_class s = 0;
    for (std::size_t i = 0; i < a.size(); i++)
        s += mpq_class(a[i]) * b[i];
    return s;
}

void check_shape(const LatticeBasis& basis) {
    if (basis.rows.empty())
        throw ParameterError("lattice: empty basis");
    for (const auto& r : basis.rows)
        if (r.size() != basis.dim())
            throw ParameterError("lattice: ragged basis");
    if (basis.count() > basis.dim())
        throw ParameterError("lattice: more vectors than dimensions");
}

} // namespace

GramSchmidt gram_schmidt(const LatticeBasis& basis) {
    check_shape(basis);
    std::size_t n = basis.count(), d = basis.dim();
    GramSchmidt gs;
    gs.ortho.assign(n, RatVec(d, 0));
    gs.mu.assign(n, std::vector<mpq_class>(n, 0));
    gs.norm2.assign(n, 0);
    for (std::size_t i = 0; i < n; i++) {
        for (std::size_t k = 0; k < d; k++)
            gs.ortho[i][k] = mpq_class(basis.rows[i][k]);
        for (std::size_t j = 0; j < i; j++) {
            if (gs.norm2[j] == 0)
                throw ParameterError("lattice: dependent basis");
            gs.mu[i][j] = dot_zq(basis.rows[i], gs.ortho[j]) / gs.norm2[j];
            for (std::size_t k = 0; k < d; k++)
                gs.ortho[i][k] -= gs.mu[i][j] * gs.ortho[j][k];
        }
        gs.norm2[i] = dot_qq(gs.ortho[i], gs.ortho[i]);
        if (gs.norm2[i] == 0)
            throw ParameterError("lattice: dependent basis");
    }
    return gs;
}

LatticeBasis lll_reduce(LatticeBasis basis) {
    check_shape(basis);
    const mpq_class delta(3, 4);
    std::size_t n = basis.count();

    GramSchmidt gs = gram_schmidt(basis);
    auto size_reduce = [&](std::size_t i, std::size_t j) {
        mpz_class c = round_nearest(gs.mu[i][j]);
        if (c == 0)
            return;
        for (std::size_t k = 0; k < basis.dim(); k++)
            basis.rows[i][k] -= c * basis.rows[j][k];
        for (std::size_t k = 0; k < j; k++)
            gs.mu[i][k] -= mpq_class(c) * gs.mu[j][k];
        gs.mu[i][j] -= mpq_class(c);
    };

    std::size_t k = 1;
    while (k < n) {
        for (std::size_t j = k; j-- > 0;)
            size_reduce(k, j);
        // Lovasz: ||b*_k||^2 >= (delta - mu^2) ||b*_{k-1}||^2
        if (gs.norm2[k] >= (delta - gs.mu[k][k - 1] * gs.mu[k][k - 1]) * gs.norm2[k - 1]) {
            k++;
        } else {
            std::swap(basis.rows[k], basis.rows[k - 1]);
            gs = gram_schmidt(basis); // exact recompute; dims here are tiny
            k = k > 1 ? k - 1 : 1;
        }
    }
    return basis;
}

IntVec babai_cvp(const LatticeBasis& basis, const RatVec& target) {
    check_shape(basis);
    if (target.size() != basis.dim())
        throw ParameterError("lattice: target dimension mismatch");
    LatticeBasis red = lll_reduce(basis);
    GramSchmidt gs = gram_schmidt(red);

    RatVec x = target;
    for (std::size_t j = red.count(); j-- > 0;) {
        mpq_class c = dot_qq(x, gs.ortho[j]) / gs.norm2[j];
        mpz_class r = round_nearest(c);
        for (std::size_t k = 0; k < red.dim(); k++)
            x[k] -= mpq_class(r) * mpq_class(red.rows[j][k]);
    }

    IntVec out(red.dim());
    for (std::size_t k = 0; k < red.dim(); k++) {
        mpq_class diff = target[k] - x[k];
        if (diff.get_den() != 1)
            throw ParameterError("lattice: non-integer CVP result");
        out[k] = diff.get_num();
    }
    return out;
}

} // namespace cubelock
