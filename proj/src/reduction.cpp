#include "cubelock/bigmath.hpp"

namespace cubelock {

BarrettCtx::BarrettCtx(Natural modulus, std::size_t max_input_bits) : modulus_(std::move(modulus)) {
    if (modulus_ < 1)
        throw ParameterError("Barrett: modulus must be positive");
    std::size_t n = bit_length(modulus_);
    if (max_input_bits == 0)
        max_input_bits = 2 * n;
    if (max_input_bits < n)
        max_input_bits = n;
    shift_ = max_input_bits + 1;
    q_ = pow2(shift_) / modulus_;
}

Natural BarrettCtx::reduce(const Natural& a) const {
    if (mpz_sgn(a.get_mpz_t()) < 0)
        throw ParameterError("Barrett: negative input");
    if (bit_length(a) > shift_)
        throw CapacityError("Barrett: input exceeds 2^shift capacity");
    // r = a - (a*q >> shift) * b; the estimate is off by at most one, so a
    // single conditional subtraction completes the reduction.
    Natural t = a * q_;
    t >>= shift_;
    Natural r = a - t * modulus_;
    if (r >= modulus_)
        r -= modulus_;
    return r;
}

MontCtx::MontCtx(Natural modulus, std::size_t rbits) : modulus_(std::move(modulus)) {
    if (modulus_ < 3 || mpz_even_p(modulus_.get_mpz_t()))
        throw ParameterError("Montgomery: modulus must be odd and > 1");
    std::size_t n = bit_length(modulus_);
    if (rbits == 0)
        rbits = ((n + 64) / 64) * 64; // limb-aligned power of two above the modulus
    if (pow2(rbits) <= modulus_)
        throw ParameterError("Montgomery: R must exceed the modulus");
    rbits_ = rbits;
    r_mask_ = pow2(rbits_) - 1;
    Natural inv;
    if (mpz_invert(inv.get_mpz_t(), modulus_.get_mpz_t(), pow2(rbits_).get_mpz_t()) == 0)
        throw ParameterError("Montgomery: modulus not invertible mod R");
    neg_inv_ = pow2(rbits_) - inv;
}

Natural MontCtx::redc(const Natural& a) const {
    if (mpz_sgn(a.get_mpz_t()) < 0)
        throw ParameterError("Montgomery: negative input");
    if (bit_length(a) > rbits_ + bit_length(modulus_))
        throw CapacityError("Montgomery: input must be below R*modulus");
    // m = (a mod R) * (-b^-1) mod R makes a + m*b divisible by R
    Natural m = a & r_mask_;
    m *= neg_inv_;
    m &= r_mask_;
    Natural t = a + m * modulus_;
    t >>= rbits_;
    if (t >= modulus_)
        t -= modulus_;
    return t;
}

Natural MontCtx::to_domain(const Natural& x) const {
    Natural r = x << rbits_;
    return r % modulus_;
}

} // namespace cubelock
