#include "cubelock/natural.hpp"

#include <cctype>
#include <stdexcept>

namespace cubelock {

std::uint32_t extract_bits(const Natural& x, std::size_t lo, unsigned w) {
    std::uint32_t v = 0;
    for (unsigned i = w; i-- > 0;)
        v = (v << 1) | (mpz_tstbit(x.get_mpz_t(), lo + i) ? 1u : 0u);
    return v;
}

Natural pow2(std::size_t e) {
    Natural r;
    mpz_setbit(r.get_mpz_t(), e);
    return r;
}

Bytes to_bytes_be(const Natural& x) {
    if (x == 0)
        return {};
    std::size_t count = 0;
    Bytes out((bit_length(x) + 7) / 8);
    mpz_export(out.data(), &count, 1, 1, 1, 0, x.get_mpz_t());
    out.resize(count);
    return out;
}

Natural from_bytes_be(const std::uint8_t* data, std::size_t len) {
    Natural r;
    if (len > 0)
        mpz_import(r.get_mpz_t(), len, 1, 1, 1, 0, data);
    return r;
}

Bytes to_fixed_bytes_be(const Natural& x, std::size_t width) {
    Bytes raw = to_bytes_be(x);
    if (raw.size() > width)
        throw std::length_error("value does not fit in " + std::to_string(width) + " bytes");
    Bytes out(width, 0);
    std::copy(raw.begin(), raw.end(), out.begin() + (width - raw.size()));
    return out;
}

std::string to_hex(const Natural& x) {
    return x.get_str(16);
}

Natural from_hex(const std::string& hex) {
    if (hex.empty())
        throw std::invalid_argument("empty hex string");
    for (char c : hex)
        if (!std::isxdigit(static_cast<unsigned char>(c)))
            throw std::invalid_argument("invalid hex digit in \"" + hex + "\"");
    return Natural(hex, 16);
}

std::string to_dec(const Natural& x) {
    return x.get_str(10);
}

} // namespace cubelock
