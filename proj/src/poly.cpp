#include "cubelock/poly.hpp"

#include "cubelock/errors.hpp"

namespace cubelock {

PolyModP::PolyModP(Natural p, std::vector<Natural> coeffs)
    : p_(std::move(p)), coeffs_(std::move(coeffs)) {
    if (p_ < 2)
        throw ParameterError("poly: modulus must be at least 2");
    for (auto& c : coeffs_) {
        c %= p_;
        if (c < 0)
            c += p_;
    }
    trim();
}

void PolyModP::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0)
        coeffs_.pop_back();
}

PolyModP PolyModP::add(const PolyModP& other) const {
    std::vector<Natural> out(std::max(coeffs_.size(), other.coeffs_.size()));
    for (std::size_t i = 0; i < out.size(); i++)
        out[i] = (coeff(i) + other.coeff(i)) % p_;
    return PolyModP(p_, std::move(out));
}

PolyModP PolyModP::sub(const PolyModP& other) const {
    std::vector<Natural> out(std::max(coeffs_.size(), other.coeffs_.size()));
    for (std::size_t i = 0; i < out.size(); i++)
        out[i] = (coeff(i) - other.coeff(i) + p_) % p_;
    return PolyModP(p_, std::move(out));
}

PolyModP PolyModP::mul(const PolyModP& other) const {
    if (is_zero() || other.is_zero())
        return zero(p_);
    std::vector<Natural> out(coeffs_.size() + other.coeffs_.size() - 1, Natural(0));
    for (std::size_t i = 0; i < coeffs_.size(); i++)
        for (std::size_t j = 0; j < other.coeffs_.size(); j++)
            out[i + j] = (out[i + j] + coeffs_[i] * other.coeffs_[j]) % p_;
    return PolyModP(p_, std::move(out));
}

PolyModP PolyModP::mod(const PolyModP& divisor) const {
    if (divisor.is_zero())
        throw ParameterError("poly: division by the zero polynomial");
    std::vector<Natural> rem = coeffs_;
    long dd = divisor.degree();
    Natural lead_inv;
    if (mpz_invert(lead_inv.get_mpz_t(), divisor.coeffs_.back().get_mpz_t(), p_.get_mpz_t()) == 0)
        throw ParameterError("poly: divisor leading coefficient not invertible");
    while (static_cast<long>(rem.size()) - 1 >= dd) {
        Natural factor = (rem.back() * lead_inv) % p_;
        std::size_t shift = rem.size() - 1 - dd;
        if (factor != 0)
            for (long i = 0; i <= dd; i++)
                rem[shift + i] = (rem[shift + i] + p_ - (factor * divisor.coeffs_[i]) % p_) % p_;
        rem.pop_back();
        while (!rem.empty() && rem.back() == 0 && static_cast<long>(rem.size()) - 1 >= dd)
            rem.pop_back();
    }
    return PolyModP(p_, std::move(rem));
}

PolyModP PolyModP::monic() const {
    if (is_zero())
        return *this;
    Natural inv;
    if (mpz_invert(inv.get_mpz_t(), coeffs_.back().get_mpz_t(), p_.get_mpz_t()) == 0)
        throw ParameterError("poly: leading coefficient not invertible");
    std::vector<Natural> out = coeffs_;
    for (auto& c : out)
        c = (c * inv) % p_;
    return PolyModP(p_, std::move(out));
}

PolyModP PolyModP::pow_x_mod(const Natural& e) const {
    if (degree() < 1)
        throw ParameterError("poly: quotient modulus must have positive degree");
    PolyModP result(p_, {1});
    PolyModP base = x(p_).mod(*this);
    std::size_t nbits = bit_length(e);
    for (std::size_t i = nbits; i-- > 0;) {
        result = result.mul(result).mod(*this);
        if (test_bit(e, i))
            result = result.mul(base).mod(*this);
    }
    return result;
}

PolyModP PolyModP::gcd(PolyModP a, PolyModP b) {
    while (!b.is_zero()) {
        PolyModP r = a.mod(b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

} // namespace cubelock
