#include "cubelock/attacks.hpp"

#include <cmath>

#include "cubelock/poly.hpp"

namespace cubelock {

Natural swap_neighbors_chain2(const Natural& p, const Natural& m) {
    BarrettCtx ctx(p);
    auto shift = [&](const Natural& v) {
        // the swapping-neighbors permutation: odd up, even down, 0 fixed
        if (v == 0)
            return v;
        if (mpz_odd_p(v.get_mpz_t()))
            return v + 1 < p ? v + 1 : v;
        return v - 1;
    };
    Natural v = ctx.mul(ctx.mul(m, m), m);
    v = shift(v);
    v = ctx.mul(ctx.mul(v, v), v);
    return shift(v);
}

std::optional<Natural> gcd_attack_swap_neighbors(const Natural& p, const Natural& c) {
    if (p < 3 || p > Natural(kGcdAttackPrimeCap))
        throw CapacityError("gcd attack: prime outside the desk-scale range");
    if (c == 0)
        return std::nullopt; // z - 0 divides everything; the gcd tells nothing

    // assume the (+1, -1) sign pattern: c = m^9 + 3m^6 + 3m^3
    std::vector<Natural> coeffs(10, Natural(0));
    coeffs[0] = p - (c % p);
    coeffs[3] = 3;
    coeffs[6] = 3;
    coeffs[9] = 1;
    PolyModP f(p, std::move(coeffs));

    // gcd(f, z^(p-1) - 1) via z^(p-1) computed in Z_p[z]/(f)
    PolyModP zp = f.pow_x_mod(p - 1);
    std::vector<Natural> one{1};
    PolyModP g = PolyModP::gcd(f, zp.sub(PolyModP(p, std::move(one))));

    if (g.degree() != 1)
        return std::nullopt;
    // g = z + a, root m = -a
    Natural m = (p - g.coeff(0)) % p;
    if (swap_neighbors_chain2(p, m) != c)
        return std::nullopt; // wrong sign pattern for this m
    return m;
}

std::optional<Natural> brute_force_dlog(const Natural& base, const Natural& target,
                                        const Natural& p) {
    if (p > Natural(std::uint64_t(1) << 24))
        throw CapacityError("brute-force dlog: p too large to enumerate");
    std::uint64_t pp = p.get_ui();
    std::uint64_t b = mpz_fdiv_ui(base.get_mpz_t(), pp);
    std::uint64_t t = mpz_fdiv_ui(target.get_mpz_t(), pp);
    std::uint64_t cur = 1;
    for (std::uint64_t e = 0; e < pp; e++) {
        if (cur == t)
            return Natural(static_cast<unsigned long>(e));
        cur = cur * b % pp;
    }
    return std::nullopt;
}

Natural find_generator(const Natural& p) {
    // safe prime: order divides {1, 2, q, 2q}; a non-residue that is not
    // -1 generates the whole group
    Natural q = (p - 1) / 2;
    for (Natural g = 2; g < p; g++) {
        Natural gq;
        mpz_powm(gq.get_mpz_t(), g.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
        if (gq == p - 1 && g != p - 1) {
            Natural g2 = (g * g) % p;
            if (g2 != 1)
                return g;
        }
    }
    throw ParameterError("no generator found (is p a safe prime?)");
}

FixedBaseAttackResult fixed_base_attack_demo(const PuzzleParams& params, const Ciphertext& ct,
                                             const Natural& g, const DlogOracle& oracle) {
    Natural h = encrypt_value(params, g); // g^3 mod p
    auto x = oracle(h, ct.c, params.p);
    if (!x)
        throw ParameterError("fixed-base demo: the discrete-log oracle failed");

    FixedBaseTable table(params.p, g);
    PowmodResult r = powmod_fixed_base(table, *x);

    FixedBaseAttackResult out;
    out.recovered = std::move(r.value);
    out.exponent = *x;
    out.trace = r.trace;
    out.table_entries = table.size();
    return out;
}

double fixed_base_table_mib(std::uint64_t n_bits) {
    Natural bits = fixed_base_table_bits(n_bits, n_bits - 1);
    return bits.get_d() / 8.0 / (1024.0 * 1024.0);
}

mpq_class expected_exponent_bits(const Natural& p) {
    std::size_t n = bit_length(p);
    mpz_class top = p - pow2(n - 1);
    mpq_class tail(2 * top + mpz_class(static_cast<unsigned long>(n)) - 1, p - 1);
    tail.canonicalize();
    return mpq_class(static_cast<unsigned long>(n - 2)) + tail;
}

double reduction_schedule_cost(const CostFn& mul_cost, const CostFn& red_cost, double n,
                               std::uint64_t k, std::uint64_t m) {
    if (m < 1)
        throw ParameterError("reduction schedule: m must be at least 1");
    double sum = 0;
    for (std::uint64_t i = 0; i < m; i++)
        sum += mul_cost(std::ldexp(n, static_cast<int>(i)));
    sum += red_cost(std::ldexp(n, static_cast<int>(m)));
    return double(k) / double(m) * sum;
}

std::uint64_t reduction_schedule_argmin(const CostFn& mul_cost, const CostFn& red_cost, double n,
                                        std::uint64_t k) {
    std::uint64_t best_m = 1;
    double best = reduction_schedule_cost(mul_cost, red_cost, n, k, 1);
    for (std::uint64_t m = 2; m <= k; m++) {
        double c = reduction_schedule_cost(mul_cost, red_cost, n, k, m);
        if (c < best) {
            best = c;
            best_m = m;
        }
    }
    return best_m;
}

} // namespace cubelock
