#include "cubelock/perm.hpp"

#include <cstring>

#include "cubelock/errors.hpp"

namespace cubelock {

namespace {

// PRF domain tags
constexpr std::uint8_t kTagPairConst = 0x21;
constexpr std::uint8_t kTagFeistel1 = 0x22;
constexpr std::uint8_t kTagFeistel2 = 0x23;
constexpr std::uint8_t kTagThorpCoin = 0x24;
constexpr std::uint8_t kTagSonKey = 0x25;
constexpr std::uint8_t kTagSonCoin = 0x26;

std::size_t ceil_pow2_bits(const Natural& n) {
    // smallest k with 2^k >= n
    std::size_t k = bit_length(n - 1);
    return k == 0 ? 1 : k;
}

Natural feistel_round_fn(const Prf& prf, std::uint8_t tag, unsigned round, const Natural& half,
                         std::size_t out_bits) {
    Block m = prf.mac(tag, round, 0, half);
    Natural v = from_bytes_be(m.data(), m.size());
    return v & (pow2(out_bits) - 1);
}

} // namespace

Natural feistel_encrypt(const Prf& prf, std::uint8_t tag, unsigned bits, const Natural& x) {
    if (bits == 0 || bits > 127)
        throw ParameterError("feistel: block must be 1..127 bits");
    if (bits == 1)
        return x ^ Natural(prf.coin(tag, 0, 0, 0) ? 1 : 0);
    std::size_t lo_bits = bits / 2, hi_bits = bits - lo_bits;
    Natural hi = x >> lo_bits;
    Natural lo = x & (pow2(lo_bits) - 1);
    for (unsigned r = 0; r < 4; r++) {
        if (r % 2 == 0)
            hi = (hi + feistel_round_fn(prf, tag, r, lo, hi_bits)) & (pow2(hi_bits) - 1);
        else
            lo = (lo + feistel_round_fn(prf, tag, r, hi, lo_bits)) & (pow2(lo_bits) - 1);
    }
    return (hi << lo_bits) | lo;
}

Natural feistel_decrypt(const Prf& prf, std::uint8_t tag, unsigned bits, const Natural& x) {
    if (bits == 0 || bits > 127)
        throw ParameterError("feistel: block must be 1..127 bits");
    if (bits == 1)
        return x ^ Natural(prf.coin(tag, 0, 0, 0) ? 1 : 0);
    std::size_t lo_bits = bits / 2, hi_bits = bits - lo_bits;
    Natural hi = x >> lo_bits;
    Natural lo = x & (pow2(lo_bits) - 1);
    for (unsigned r = 4; r-- > 0;) {
        if (r % 2 == 0)
            hi = (hi - feistel_round_fn(prf, tag, r, lo, hi_bits)) & (pow2(hi_bits) - 1);
        else
            lo = (lo - feistel_round_fn(prf, tag, r, hi, lo_bits)) & (pow2(lo_bits) - 1);
    }
    return (hi << lo_bits) | lo;
}

const char* perm_kind_name(PermKind kind) {
    switch (kind) {
    case PermKind::SwapNeighbors: return "swap-neighbors";
    case PermKind::PairMap: return "pair-map";
    case PermKind::CycleWalkFpe: return "cycle-walk-fpe";
    case PermKind::BothEnds: return "both-ends";
    case PermKind::Thorp: return "thorp";
    case PermKind::SwapOrNot: return "swap-or-not";
    case PermKind::MixAndCut: return "mix-and-cut";
    }
    return "?";
}

PermKind perm_kind_from_name(const std::string& name) {
    for (PermKind k : {PermKind::SwapNeighbors, PermKind::PairMap, PermKind::CycleWalkFpe,
                       PermKind::BothEnds, PermKind::Thorp, PermKind::SwapOrNot,
                       PermKind::MixAndCut})
        if (name == perm_kind_name(k))
            return k;
    throw ParameterError("unknown permutation kind: " + name);
}

Permutation::Permutation(PermKind kind, Natural domain_size, Bytes key, std::uint32_t rounds,
                         Natural pair_base)
    : kind_(kind),
      domain_(std::move(domain_size)),
      key_(std::move(key)),
      rounds_(rounds),
      pair_base_(std::move(pair_base)),
      prf_(key_) {
    if (domain_ < 2)
        throw ParameterError("permutation: domain must have at least 2 elements");
    if (rounds_ == 0)
        rounds_ = static_cast<std::uint32_t>(bit_length(domain_));

    switch (kind_) {
    case PermKind::SwapNeighbors:
        break;
    case PermKind::PairMap:
        if (pair_base_ < 2 || pair_base_ * pair_base_ != domain_)
            throw ParameterError("pair-map: domain must be pair_base^2");
        c1_ = prf_.uniform(kTagPairConst, 0, 1, pair_base_);
        c2_ = prf_.uniform(kTagPairConst, 0, 2, pair_base_);
        break;
    case PermKind::CycleWalkFpe: {
        std::size_t l = ceil_pow2_bits(domain_);
        if (l < 128) {
            bin_bits_ = l;
        } else {
            bin_bits_ = ((l + 127) / 128) * 128;
            if (bin_bits_ - l > 7)
                throw ParameterError(
                    "cycle-walk-fpe: domain is " + std::to_string(bin_bits_ - l) +
                    " bits below the block boundary; expected walk length is impractical "
                    "(use both-ends instead)");
            ecb1_ = std::make_unique<Aes256>(prf_.subkey(1));
        }
        bin_size_ = pow2(bin_bits_);
        break;
    }
    case PermKind::BothEnds: {
        bin_bits_ = ceil_pow2_bits(domain_);
        bin_size_ = pow2(bin_bits_);
        if (bin_bits_ >= 128) {
            ecb1_ = std::make_unique<Aes256>(prf_.subkey(1));
            ecb2_ = std::make_unique<Aes256>(prf_.subkey(2));
        }
        break;
    }
    case PermKind::Thorp:
    case PermKind::MixAndCut:
        bin_bits_ = ceil_pow2_bits(domain_);
        bin_size_ = pow2(bin_bits_);
        break;
    case PermKind::SwapOrNot:
        break;
    }
}

namespace {

Natural aes_block_value(const Aes256& aes, const Natural& v, bool fwd) {
    std::uint8_t in[16], out[16];
    Bytes b = to_fixed_bytes_be(v, 16);
    std::memcpy(in, b.data(), 16);
    if (fwd)
        aes.encrypt_block(in, out);
    else
        aes.decrypt_block(in, out);
    return from_bytes_be(out, 16);
}

} // namespace

Natural Permutation::eval(const Natural& v, bool fwd, WalkStats* stats) const {
    switch (kind_) {
    case PermKind::SwapNeighbors: {
        // odd -> x+1, even -> x-1; 0 (and a domain-edge odd value) stay put
        if (v == 0)
            return v;
        if (mpz_odd_p(v.get_mpz_t()))
            return v + 1 < domain_ ? v + 1 : v;
        return v - 1;
    }
    case PermKind::PairMap: {
        Natural u = v / pair_base_;
        Natural w = v % pair_base_;
        if (fwd) {
            Natural nu = (w + c1_) % pair_base_;
            Natural nw = (u + c2_) % pair_base_;
            return nu * pair_base_ + nw;
        }
        Natural ou = (w - c2_ + pair_base_) % pair_base_;
        Natural ow = (u - c1_ + pair_base_) % pair_base_;
        return ou * pair_base_ + ow;
    }
    case PermKind::CycleWalkFpe: {
        auto enc = [&](const Natural& x) {
            if (stats)
                stats->walks++;
            if (!ecb1_)
                return fwd ? feistel_encrypt(prf_, kTagFeistel1, unsigned(bin_bits_), x)
                           : feistel_decrypt(prf_, kTagFeistel1, unsigned(bin_bits_), x);
            Bytes buf = to_fixed_bytes_be(x, bin_bits_ / 8);
            if (fwd)
                ecb1_->encrypt_ecb(buf.data(), buf.data(), buf.size());
            else
                ecb1_->decrypt_ecb(buf.data(), buf.data(), buf.size());
            return from_bytes_be(buf);
        };
        Natural c = enc(v);
        while (c >= domain_)
            c = enc(c);
        return c;
    }
    case PermKind::BothEnds: {
        auto enc = [&](const Natural& x) {
            if (stats)
                stats->walks++;
            return fwd ? both_ends_pass(x, true) : both_ends_pass(x, false);
        };
        Natural c = enc(v);
        while (c >= domain_)
            c = enc(c);
        return c;
    }
    case PermKind::Thorp: {
        auto pass = [&](Natural x) {
            if (stats)
                stats->walks++;
            Natural half = bin_size_ >> 1;
            if (fwd) {
                for (std::uint32_t r = 0; r < rounds_; r++) {
                    bool left = x < half;
                    Natural low = left ? x : x - half;
                    bool b = prf_.coin(kTagThorpCoin, 0, r, low);
                    x = 2 * low + (left == !b ? 1 : 0);
                }
            } else {
                for (std::uint32_t r = rounds_; r-- > 0;) {
                    Natural low = x >> 1;
                    bool odd = mpz_odd_p(x.get_mpz_t());
                    bool b = prf_.coin(kTagThorpCoin, 0, r, low);
                    // the left card landed on slot 2*low + (1-b)
                    x = odd == !b ? low : low + half;
                }
            }
            return x;
        };
        Natural c = pass(v);
        while (c >= domain_)
            c = pass(c);
        return c;
    }
    case PermKind::SwapOrNot:
        return fwd ? swap_or_not(v, domain_, 0, false) : swap_or_not(v, domain_, 0, true);
    case PermKind::MixAndCut: {
        auto pass_fwd = [&](Natural x) {
            if (stats)
                stats->walks++;
            Natural size = bin_size_;
            std::uint32_t level = 0;
            while (size > 1) {
                x = swap_or_not(x, size, level, false);
                Natural half = size >> 1;
                if (x >= half)
                    break;
                size = half;
                level++;
            }
            return x;
        };
        auto pass_inv = [&](Natural y) {
            if (stats)
                stats->walks++;
            // the stopping level is determined by the top bit of y
            std::size_t k = bin_bits_;
            std::size_t start = y == 0 ? k - 1 : k - bit_length(y);
            for (std::size_t level = start + 1; level-- > 0;)
                y = swap_or_not(y, pow2(k - level), static_cast<std::uint32_t>(level), true);
            return y;
        };
        Natural c = fwd ? pass_fwd(v) : pass_inv(v);
        while (c >= domain_)
            c = fwd ? pass_fwd(c) : pass_inv(c);
        return c;
    }
    }
    throw ParameterError("permutation: unhandled kind");
}

Natural Permutation::both_ends_pass(const Natural& s, bool fwd) const {
    std::size_t l = bin_bits_;
    if (l < 128) {
        // degenerate single-block form of the construction
        if (fwd) {
            Natural t = feistel_encrypt(prf_, kTagFeistel1, unsigned(l), s);
            return feistel_encrypt(prf_, kTagFeistel2, unsigned(l), t);
        }
        Natural t = feistel_decrypt(prf_, kTagFeistel2, unsigned(l), s);
        return feistel_decrypt(prf_, kTagFeistel1, unsigned(l), t);
    }

    constexpr std::size_t b = 128;
    std::size_t nblocks = l / b;
    std::size_t x = l % b; // unencrypted slack carried by the opposite pass
    Natural mask_b = pow2(b) - 1;

    // pass 1: blocks aligned to the string head, x-bit tail untouched
    auto pass1 = [&](const Natural& in, bool enc) {
        Natural out = 0;
        for (std::size_t i = 0; i < nblocks; i++) {
            std::size_t sh = l - (i + 1) * b;
            Natural blk = (in >> sh) & mask_b;
            out = (out << b) | aes_block_value(*ecb1_, blk, enc);
        }
        return (out << x) | (in & (pow2(x) - 1));
    };
    // pass 2: x-bit head untouched, blocks aligned to the string tail
    auto pass2 = [&](const Natural& in, bool enc) {
        Natural out = in >> (l - x);
        for (std::size_t i = 0; i < nblocks; i++) {
            std::size_t sh = l - x - (i + 1) * b;
            Natural blk = (in >> sh) & mask_b;
            out = (out << b) | aes_block_value(*ecb2_, blk, enc);
        }
        return out;
    };

    if (fwd)
        return pass2(pass1(s, true), true);
    Natural t = pass2(s, false);
    return pass1(t, false);
}

Natural Permutation::swap_or_not(Natural x, const Natural& size, std::uint32_t level,
                                 bool inverse) const {
    for (std::uint32_t i = 0; i < rounds_; i++) {
        std::uint32_t r = inverse ? rounds_ - 1 - i : i;
        Natural k = prf_.uniform(kTagSonKey, level, r, size);
        Natural y = k >= x ? Natural(k - x) : Natural(k - x + size);
        const Natural& hi = x > y ? x : y;
        if (prf_.coin(kTagSonCoin, level, r, hi))
            x = y;
    }
    return x;
}

Natural Permutation::forward(const Natural& x) const {
    WalkStats ignored;
    return forward(x, ignored);
}

Natural Permutation::inverse(const Natural& y) const {
    WalkStats ignored;
    return inverse(y, ignored);
}

Natural Permutation::forward(const Natural& x, WalkStats& stats) const {
    if (x < 0 || x >= domain_)
        throw ParameterError("permutation: input outside the domain");
    return eval(x, true, &stats);
}

Natural Permutation::inverse(const Natural& y, WalkStats& stats) const {
    if (y < 0 || y >= domain_)
        throw ParameterError("permutation: input outside the domain");
    return eval(y, false, &stats);
}

} // namespace cubelock
