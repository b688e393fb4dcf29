#include "cubelock/rng.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>

#include <openssl/rand.h>

#include "cubelock/crypto.hpp"

namespace cubelock {

std::uint64_t RandomSource::next_u64() {
    std::uint8_t buf[8];
    fill(buf, sizeof buf);
    std::uint64_t v = 0;
    for (std::uint8_t b : buf)
        v = (v << 8) | b;
    return v;
}

Natural RandomSource::below(const Natural& bound) {
    if (bound <= 0)
        throw std::invalid_argument("below: bound must be positive");
    std::size_t nbits = bit_length(bound);
    for (;;) {
        Natural candidate = bits(nbits);
        if (candidate < bound)
            return candidate;
    }
}

Natural RandomSource::bits(std::size_t nbits) {
    if (nbits == 0)
        return 0;
    Bytes buf((nbits + 7) / 8);
    fill(buf.data(), buf.size());
    unsigned extra = static_cast<unsigned>(buf.size() * 8 - nbits);
    buf[0] &= static_cast<std::uint8_t>(0xff >> extra);
    return from_bytes_be(buf);
}

Bytes RandomSource::bytes(std::size_t len) {
    Bytes out(len);
    fill(out.data(), len);
    return out;
}

void SystemRandom::fill(std::uint8_t* out, std::size_t len) {
    if (len == 0)
        return;
    if (RAND_bytes(out, static_cast<int>(len)) != 1)
        throw std::runtime_error("system entropy source failed");
}

struct CtrDrbg::Impl {
    Impl(const std::array<std::uint8_t, 32>& key) : prf(Bytes(key.begin(), key.end())) {}
    Prf prf;
    std::uint64_t counter = 0;
};

CtrDrbg::CtrDrbg(const Bytes& seed) : impl_(new Impl(sha256(seed))) {}

CtrDrbg::~CtrDrbg() = default;

void CtrDrbg::fill(std::uint8_t* out, std::size_t len) {
    impl_->prf.stream(0x01, impl_->counter++, out, len);
}

std::unique_ptr<CtrDrbg> CtrDrbg::fork(std::uint64_t label) const {
    Bytes seed(40);
    impl_->prf.stream(0x02, label, seed.data(), seed.size());
    return std::make_unique<CtrDrbg>(seed);
}

} // namespace cubelock
