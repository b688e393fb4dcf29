#define OPENSSL_SUPPRESS_DEPRECATED

#include "cubelock/crypto.hpp"

#include <cstring>
#include <stdexcept>

#include <openssl/aes.h>
#include <openssl/evp.h>
#include <openssl/sha.h>

namespace cubelock {

std::array<std::uint8_t, 32> sha256(const std::uint8_t* data, std::size_t len) {
    std::array<std::uint8_t, 32> out;
    SHA256(data, len, out.data());
    return out;
}

std::string fingerprint_hex(const Bytes& data) {
    auto md = sha256(data);
    static const char* digits = "0123456789abcdef";
    std::string hex;
    hex.reserve(32);
    for (int i = 0; i < 16; i++) {
        hex.push_back(digits[md[i] >> 4]);
        hex.push_back(digits[md[i] & 0xf]);
    }
    return hex;
}

struct Aes256::Impl {
    AES_KEY enc;
    AES_KEY dec;
    std::array<std::uint8_t, 32> key;
};

Aes256::Aes256(const std::array<std::uint8_t, 32>& key) : impl_(new Impl) {
    impl_->key = key;
    AES_set_encrypt_key(key.data(), 256, &impl_->enc);
    AES_set_decrypt_key(key.data(), 256, &impl_->dec);
}

Aes256::~Aes256() { delete impl_; }

Aes256::Aes256(const Aes256& other) : impl_(new Impl(*other.impl_)) {}

void Aes256::encrypt_block(const std::uint8_t in[16], std::uint8_t out[16]) const {
    AES_encrypt(in, out, &impl_->enc);
}

void Aes256::decrypt_block(const std::uint8_t in[16], std::uint8_t out[16]) const {
    AES_decrypt(in, out, &impl_->dec);
}

namespace {

void evp_ecb(const std::array<std::uint8_t, 32>& key, bool enc, const std::uint8_t* in,
             std::uint8_t* out, std::size_t len) {
    if (len % kBlockBytes != 0)
        throw std::invalid_argument("ECB length not a multiple of the block size");
    EVP_CIPHER_CTX* ctx = EVP_CIPHER_CTX_new();
    if (!ctx)
        throw std::runtime_error("EVP_CIPHER_CTX_new failed");
    int ok = enc ? EVP_EncryptInit_ex(ctx, EVP_aes_256_ecb(), nullptr, key.data(), nullptr)
                 : EVP_DecryptInit_ex(ctx, EVP_aes_256_ecb(), nullptr, key.data(), nullptr);
    EVP_CIPHER_CTX_set_padding(ctx, 0);
    int outl = 0;
    if (ok == 1) {
        ok = enc ? EVP_EncryptUpdate(ctx, out, &outl, in, static_cast<int>(len))
                 : EVP_DecryptUpdate(ctx, out, &outl, in, static_cast<int>(len));
    }
    EVP_CIPHER_CTX_free(ctx);
    if (ok != 1 || outl != static_cast<int>(len))
        throw std::runtime_error("AES-ECB pass failed");
}

} // namespace

void Aes256::encrypt_ecb(const std::uint8_t* in, std::uint8_t* out, std::size_t len) const {
    evp_ecb(impl_->key, true, in, out, len);
}

void Aes256::decrypt_ecb(const std::uint8_t* in, std::uint8_t* out, std::size_t len) const {
    evp_ecb(impl_->key, false, in, out, len);
}

namespace {

std::array<std::uint8_t, 32> normalize_key(const Bytes& material) {
    std::array<std::uint8_t, 32> key{};
    if (material.size() == 32)
        std::memcpy(key.data(), material.data(), 32);
    else
        key = sha256(material);
    return key;
}

void put_u32(std::uint8_t* p, std::uint32_t v) {
    p[0] = static_cast<std::uint8_t>(v >> 24);
    p[1] = static_cast<std::uint8_t>(v >> 16);
    p[2] = static_cast<std::uint8_t>(v >> 8);
    p[3] = static_cast<std::uint8_t>(v);
}

void put_u64(std::uint8_t* p, std::uint64_t v) {
    put_u32(p, static_cast<std::uint32_t>(v >> 32));
    put_u32(p + 4, static_cast<std::uint32_t>(v));
}

} // namespace

Prf::Prf(const Bytes& key_material) : aes_(normalize_key(key_material)) {}

Block Prf::cbc_mac(const std::uint8_t* msg, std::size_t len) const {
    Block acc{};
    Block buf;
    for (std::size_t off = 0; off < len; off += kBlockBytes) {
        std::size_t n = std::min(kBlockBytes, len - off);
        buf.fill(0);
        std::memcpy(buf.data(), msg + off, n);
        for (std::size_t i = 0; i < kBlockBytes; i++)
            buf[i] ^= acc[i];
        aes_.encrypt_block(buf.data(), acc.data());
    }
    return acc;
}

Block Prf::mac(std::uint8_t tag, std::uint32_t level, std::uint32_t round,
               const Natural& position) const {
    Bytes pos = to_bytes_be(position);
    // Long positions are digested first so a coin costs a few cipher calls
    // even for values tens of thousands of bits wide.
    if (pos.size() > 3) {
        auto digest = sha256(pos);
        pos.assign(digest.begin(), digest.end());
    }
    // header: tag, level, round, length; short positions fit one block
    Bytes msg(13 + pos.size());
    msg[0] = tag;
    put_u32(&msg[1], level);
    put_u32(&msg[5], round);
    put_u32(&msg[9], static_cast<std::uint32_t>(pos.size()));
    std::memcpy(msg.data() + 13, pos.data(), pos.size());
    return cbc_mac(msg.data(), msg.size());
}

namespace {

// Counter-mode keystream: encrypt a buffer of per-block counter inputs.
// One bulk ECB pass once there is enough work to amortize it.
void ctr_keystream(const Aes256& aes, const std::uint8_t header[12], std::uint8_t* out,
                   std::size_t len) {
    std::size_t nblocks = (len + kBlockBytes - 1) / kBlockBytes;
    Bytes buf(nblocks * kBlockBytes);
    for (std::size_t i = 0; i < nblocks; i++) {
        std::memcpy(&buf[i * kBlockBytes], header, 12);
        put_u32(&buf[i * kBlockBytes + 12], static_cast<std::uint32_t>(i));
    }
    if (nblocks >= 8) {
        aes.encrypt_ecb(buf.data(), buf.data(), buf.size());
    } else {
        for (std::size_t i = 0; i < nblocks; i++)
            aes.encrypt_block(&buf[i * kBlockBytes], &buf[i * kBlockBytes]);
    }
    std::memcpy(out, buf.data(), len);
}

} // namespace

Natural Prf::uniform(std::uint8_t tag, std::uint32_t level, std::uint32_t round,
                     const Natural& bound) const {
    if (bound == 0)
        throw std::invalid_argument("uniform: zero bound");
    // 64 extra bits make the mod-bound bias negligible
    std::size_t nbytes = (bit_length(bound) + 7) / 8 + 8;
    Bytes ks(nbytes);
    std::uint8_t header[12] = {tag, 0xaa, 0, 0};
    put_u32(header + 4, level);
    put_u32(header + 8, round);
    ctr_keystream(aes_, header, ks.data(), nbytes);
    return from_bytes_be(ks) % bound;
}

void Prf::stream(std::uint8_t tag, std::uint64_t nonce, std::uint8_t* out, std::size_t len) const {
    std::uint8_t header[12] = {tag, 0xbb, 0, 0};
    put_u64(header + 4, nonce);
    ctr_keystream(aes_, header, out, len);
}

std::array<std::uint8_t, 32> Prf::subkey(std::uint8_t tag) const {
    std::array<std::uint8_t, 32> key;
    stream(0xf0, tag, key.data(), key.size());
    return key;
}

} // namespace cubelock
