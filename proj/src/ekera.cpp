#include "cubelock/ekera.hpp"

#include <cmath>
#include <complex>
#include <numeric>
#include <thread>

#include "cubelock/errors.hpp"

namespace cubelock {

namespace {

std::uint32_t bit_width_u32(std::uint32_t v) {
    std::uint32_t b = 0;
    while (v) {
        b++;
        v >>= 1;
    }
    return b;
}

} // namespace

EkeraInstance EkeraInstance::make(std::uint32_t p, std::uint32_t g, std::uint32_t x,
                                  std::uint32_t s) {
    if (p < 3)
        throw ParameterError("ekera: p must be an odd prime");
    if (g < 2 || g >= p || x < 1 || x >= p)
        throw ParameterError("ekera: g and x must lie in Z_p^*");
    if (s < 1)
        throw ParameterError("ekera: s must be at least 1");

    EkeraInstance inst;
    inst.p = p;
    inst.g = g;
    inst.x = x;
    inst.s = s;
    inst.m = bit_width_u32(p); // 2^(m-1) <= p < 2^m
    inst.l = (inst.m + s - 1) / s;
    if (inst.m + 2 * inst.l > kEkeraStateBitsCap)
        throw CapacityError("ekera: m + 2l exceeds the enumeration cap");

    // verify g generates Z_p^* by walking its powers
    std::uint64_t cur = g % p;
    std::uint32_t order = 1;
    std::optional<std::uint32_t> dlog;
    while (cur != 1) {
        if (cur == x)
            dlog = order;
        cur = cur * g % p;
        order++;
        if (order > p)
            throw ParameterError("ekera: g does not generate Z_p^*");
    }
    if (order != p - 1)
        throw ParameterError("ekera: g does not generate Z_p^*");
    if (x == 1)
        dlog = 0;
    if (!dlog)
        throw ParameterError("ekera: x not in the subgroup generated by g");
    inst.d = *dlog;
    return inst;
}

EkeraSimulator::EkeraSimulator(const EkeraInstance& inst, unsigned workers) : inst_(inst) {
    const std::uint64_t nj = 1ull << (inst.m + inst.l);
    const std::uint64_t nk = 1ull << inst.l;
    const std::uint32_t q = inst.p - 1;
    const std::uint32_t d = inst.d;

    // Amplitude of (j,k,y=g^r): sum over the register pairs (a,b) with
    // a - b*d = r (mod q) of the QFT phase. For each residue u the set of
    // contributing a is an arithmetic progression, so its phase sum has a
    // closed geometric form.
    dist_.assign(nj * nk, 0.0);

    const double two_pi = 2.0 * std::acos(-1.0);
    std::vector<std::complex<double>> w2(nk);
    for (std::uint64_t k = 0; k < nk; k++)
        w2[k] = std::polar(1.0, two_pi * double(k) / double(nk));

    auto process_j = [&](std::uint64_t j0, std::uint64_t j1) {
        std::vector<std::complex<double>> geo(q);
        std::vector<std::complex<double>> acc(nk);
        // all phase arguments are reduced mod nj in exact integer
        // arithmetic before touching doubles
        auto phase = [&](std::uint64_t units) {
            return std::polar(1.0, two_pi * double(units % nj) / double(nj));
        };
        for (std::uint64_t j = j0; j < j1; j++) {
            // geo[u] = sum over a ≡ u (mod q), a < nj of e^(2πi a j / nj)
            std::uint64_t jq = (j * q) % nj;
            std::complex<double> step = phase(jq);
            for (std::uint32_t u = 0; u < q; u++) {
                std::uint64_t count = (nj - 1 - u) / q + 1;
                std::complex<double> first = phase(j * u);
                if (jq == 0) {
                    geo[u] = first * double(count);
                } else {
                    std::complex<double> num = 1.0 - phase(jq * count);
                    geo[u] = first * num / (1.0 - step);
                }
            }
            for (std::uint32_t r = 0; r < q; r++) {
                // S_r(k) = sum_b w2^{bk} * geo[(r + b d) mod q]
                for (std::uint64_t k = 0; k < nk; k++)
                    acc[k] = 0.0;
                std::uint32_t u = r;
                for (std::uint64_t b = 0; b < nk; b++) {
                    const std::complex<double> gv = geo[u];
                    for (std::uint64_t k = 0; k < nk; k++)
                        acc[k] += gv * w2[(b * k) & (nk - 1)];
                    u += d;
                    if (u >= q)
                        u -= q;
                }
                for (std::uint64_t k = 0; k < nk; k++)
                    dist_[j * nk + k] += std::norm(acc[k]);
            }
        }
    };

    const double denom = double(nj) * double(nk);
    if (workers <= 1) {
        process_j(0, nj);
    } else {
        std::vector<std::thread> pool;
        std::uint64_t chunk = (nj + workers - 1) / workers;
        for (unsigned t = 0; t < workers; t++) {
            std::uint64_t lo = t * chunk, hi = std::min(nj, lo + chunk);
            if (lo < hi)
                pool.emplace_back(process_j, lo, hi);
        }
        for (auto& t : pool)
            t.join();
    }

    for (double& v : dist_)
        v /= denom * denom;

    total_ = std::accumulate(dist_.begin(), dist_.end(), 0.0);
    cdf_.resize(dist_.size());
    double run = 0;
    for (std::size_t i = 0; i < dist_.size(); i++) {
        dist_[i] /= total_;
        run += dist_[i];
        cdf_[i] = run;
    }
    cdf_.back() = 1.0;
}

double EkeraSimulator::prob(std::uint64_t j, std::uint64_t k) const {
    return dist_.at((j << inst_.l) + k);
}

std::pair<std::uint64_t, std::uint64_t> EkeraSimulator::sample(RandomSource& rng) const {
    double u = double(rng.next_u64() >> 11) * 0x1.0p-53;
    auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
    std::size_t idx = it == cdf_.end() ? cdf_.size() - 1 : std::size_t(it - cdf_.begin());
    return {idx >> inst_.l, idx & ((1ull << inst_.l) - 1)};
}

double EkeraSimulator::sampler_tv() const {
    // distance between the cdf-implied cell masses and dist_
    double tv = 0;
    double prev = 0;
    for (std::size_t i = 0; i < dist_.size(); i++) {
        tv += std::abs((cdf_[i] - prev) - dist_[i]);
        prev = cdf_[i];
    }
    return tv / 2;
}

std::pair<std::uint64_t, std::uint64_t> ekera_simulate(const EkeraInstance& inst,
                                                       RandomSource& rng) {
    return EkeraSimulator(inst).sample(rng);
}

std::optional<Natural> ekera_postprocess(
    const std::vector<std::pair<std::uint64_t, std::uint64_t>>& pairs, std::uint32_t m,
    std::uint32_t s, const Natural& group_order) {
    if (pairs.empty())
        throw ParameterError("ekera: need at least one (j,k) pair");
    std::uint32_t l = (m + s - 1) / s;
    const std::size_t n = pairs.size();
    const mpz_class scale = mpz_class(1) << (m + l);
    const mpz_class half = scale / 2;

    // f(v) = centered residue of v mod 2^(m+l)
    auto centered = [&](const mpz_class& v) {
        mpz_class r;
        mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), scale.get_mpz_t());
        if (r >= half)
            r -= scale;
        return r;
    };

    RatVec target(n + 1, mpq_class(0));
    for (std::size_t i = 0; i < n; i++) {
        mpz_class v = -(mpz_class(pairs[i].second) << m);
        target[i] = mpq_class(centered(v));
    }

    LatticeBasis basis;
    IntVec row0(n + 1, 0);
    for (std::size_t i = 0; i < n; i++)
        row0[i] = mpz_class(pairs[i].first);
    row0[n] = 1;
    basis.rows.push_back(std::move(row0));
    for (std::size_t i = 0; i < n; i++) {
        IntVec row(n + 1, 0);
        row[i] = scale;
        basis.rows.push_back(std::move(row));
    }

    IntVec u;
    try {
        u = babai_cvp(basis, target);
    } catch (const ParameterError&) {
        return std::nullopt;
    }
    mpz_class d = u[n] % group_order;
    if (d < 0)
        d += group_order;
    return Natural(d);
}

} // namespace cubelock
