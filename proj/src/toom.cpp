#include "cubelock/bigmath.hpp"

namespace cubelock {

namespace {

using Signed = mpz_class;

// Below this the split overhead dominates; hand off to the backend.
constexpr std::size_t kToomBaseBits = 512;

Signed toom_signed(const Signed& a, const Signed& b, unsigned k);

Signed pointwise(const Signed& a, const Signed& b, unsigned k) {
    Signed r = toom_signed(abs(a), abs(b), k);
    if (mpz_sgn(a.get_mpz_t()) * mpz_sgn(b.get_mpz_t()) < 0)
        r = -r;
    return r;
}

Signed toom2(const Signed& a, const Signed& b) {
    std::size_t n = std::max(mpz_sizeinbase(a.get_mpz_t(), 2), mpz_sizeinbase(b.get_mpz_t(), 2));
    std::size_t split = n / 2;
    Signed mask = (Signed(1) << split) - 1;

    Signed a0 = a & mask, a1 = a >> split;
    Signed b0 = b & mask, b1 = b >> split;

    // evaluation points {0, 1, inf}
    Signed v0 = pointwise(a0, b0, 2);
    Signed v1 = pointwise(a0 + a1, b0 + b1, 2);
    Signed vinf = pointwise(a1, b1, 2);

    Signed mid = v1 - v0 - vinf;
    return v0 + (mid << split) + (vinf << (2 * split));
}

Signed toom3(const Signed& a, const Signed& b) {
    std::size_t n = std::max(mpz_sizeinbase(a.get_mpz_t(), 2), mpz_sizeinbase(b.get_mpz_t(), 2));
    std::size_t split = n / 3;
    Signed mask = (Signed(1) << split) - 1;

    Signed a0 = a & mask, a1 = (a >> split) & mask, a2 = a >> (2 * split);
    Signed b0 = b & mask, b1 = (b >> split) & mask, b2 = b >> (2 * split);

    // evaluation points {0, 1, -1, 2, inf}
    Signed v0 = pointwise(a0, b0, 3);
    Signed v1 = pointwise(a0 + a1 + a2, b0 + b1 + b2, 3);
    Signed vm1 = pointwise(a0 - a1 + a2, b0 - b1 + b2, 3);
    Signed v2 = pointwise(a0 + 2 * a1 + 4 * a2, b0 + 2 * b1 + 4 * b2, 3);
    Signed vinf = pointwise(a2, b2, 3);

    // interpolation: all divisions are exact
    Signed c0 = v0;
    Signed c4 = vinf;
    Signed sum = v1 - v0 - vinf;  //  c1 + c2 + c3
    Signed alt = vm1 - v0 - vinf; // -c1 + c2 - c3
    Signed c2 = (sum + alt) / 2;
    Signed odd = (sum - alt) / 2; //  c1 + c3
    Signed t = v2 - v0 - 16 * vinf;
    Signed u = (t - 4 * c2) / 2; //  c1 + 4*c3
    Signed c3 = (u - odd) / 3;
    Signed c1 = odd - c3;

    return c0 + (c1 << split) + (c2 << (2 * split)) + (c3 << (3 * split)) + (c4 << (4 * split));
}

Signed toom_signed(const Signed& a, const Signed& b, unsigned k) {
    if (a == 0 || b == 0)
        return 0;
    std::size_t n = std::min(mpz_sizeinbase(a.get_mpz_t(), 2), mpz_sizeinbase(b.get_mpz_t(), 2));
    if (n <= kToomBaseBits)
        return a * b;
    return k == 2 ? toom2(a, b) : toom3(a, b);
}

} // namespace

Natural mul_toom(const Natural& a, const Natural& b, unsigned k) {
    if (k != 2 && k != 3)
        throw ParameterError("mul_toom: k must be 2 or 3");
    return toom_signed(a, b, k);
}

} // namespace cubelock
