#pragma once

#include <vector>

#include "cubelock/natural.hpp"

namespace cubelock {

// Dense polynomial over Z_p, coefficient i at index i, no trailing zeros.
class PolyModP {
public:
    PolyModP(Natural p, std::vector<Natural> coeffs);

    static PolyModP zero(const Natural& p) { return PolyModP(p, {}); }
    static PolyModP x(const Natural& p) { return PolyModP(p, {0, 1}); }

    const Natural& p() const { return p_; }
    const std::vector<Natural>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    Natural coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Natural(0); }

    PolyModP add(const PolyModP& other) const;
    PolyModP sub(const PolyModP& other) const;
    PolyModP mul(const PolyModP& other) const;
    PolyModP mod(const PolyModP& divisor) const;
    PolyModP monic() const;

    // x^e mod this polynomial, by repeated squaring in the quotient ring.
    PolyModP pow_x_mod(const Natural& e) const;

    static PolyModP gcd(PolyModP a, PolyModP b);

private:
    void trim();
    Natural p_;
    std::vector<Natural> coeffs_;
};

} // namespace cubelock
