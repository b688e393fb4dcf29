#include <algorithm>
#include <cstring>
#include <future>
#include <thread>

#include "cubelock/bigmath.hpp"

namespace cubelock {

namespace {

// Reduction-strategy-agnostic modular multiplier with depth accounting.
struct MulEngine {
    const BarrettCtx* barrett = nullptr;
    const MontCtx* mont = nullptr;
    std::uint64_t total = 0;

    Natural mul(const Natural& x, const Natural& y) {
        total++;
        return barrett ? barrett->mul(x, y) : mont->mul(x, y);
    }
};

struct Traced {
    Natural v;
    std::uint64_t depth = 0;
};

Traced mul(MulEngine& eng, const Traced& x, const Traced& y) {
    return {eng.mul(x.v, y.v), std::max(x.depth, y.depth) + 1};
}

} // namespace

PowmodResult powmod_window(const Natural& base, const Natural& exp, const Natural& modulus,
                           unsigned w, Reduction strategy) {
    if (w < 1)
        throw ParameterError("powmod: window width must be at least 1");
    if (modulus < 1)
        throw ParameterError("powmod: modulus must be positive");
    std::size_t n_mod = bit_length(modulus);
    if ((Natural(1) << w) * ((n_mod + 7) / 8) > kPowmodTableCapBytes)
        throw ParameterError("powmod: 2^w table exceeds the memory cap");
    if (modulus == 1)
        return {Natural(0), {}};
    if (exp == 0)
        return {Natural(1), {}};

    std::optional<BarrettCtx> barrett;
    std::optional<MontCtx> mont;
    if (strategy == Reduction::Montgomery) {
        if (mpz_even_p(modulus.get_mpz_t()))
            throw ParameterError("powmod: Montgomery strategy requires an odd modulus");
        mont.emplace(modulus);
    } else {
        barrett.emplace(modulus);
    }
    MulEngine eng;
    if (mont)
        eng.mont = &*mont;
    else
        eng.barrett = &*barrett;

    Natural b = base % modulus;
    Natural one = 1;
    if (mont) {
        b = mont->to_domain(b);
        one = mont->to_domain(one);
    }

    // Table of small powers; T[x] = base^x with depth x-1 multiplications.
    std::vector<Traced> table(std::size_t(1) << w);
    table[0] = {one, 0};
    if (table.size() > 1)
        table[1] = {b, 0};
    for (std::size_t x = 2; x < table.size(); x++)
        table[x] = mul(eng, table[x - 1], table[1]);

    // Scan fixed windows from the most significant end, zero-padding the top.
    std::size_t nbits = bit_length(exp);
    std::size_t windows = (nbits + w - 1) / w;
    Traced acc = table[extract_bits(exp, (windows - 1) * w, w)];
    for (std::size_t i = windows - 1; i-- > 0;) {
        for (unsigned s = 0; s < w; s++)
            acc = mul(eng, acc, acc);
        acc = mul(eng, acc, table[extract_bits(exp, i * w, w)]);
    }

    Natural out = mont ? mont->from_domain(acc.v) : acc.v;
    return {std::move(out), {acc.depth, eng.total}};
}

FixedBaseTable::FixedBaseTable(Natural modulus, Natural base, std::size_t max_exp_bits) {
    if (modulus < 2)
        throw ParameterError("fixed-base table: modulus must be at least 2");
    modulus_ = std::move(modulus);
    if (max_exp_bits == 0)
        max_exp_bits = bit_length(modulus_) - 1;
    BarrettCtx ctx(modulus_);
    base_ = base % modulus_;
    powers_.reserve(max_exp_bits);
    Natural cur = base_;
    for (std::size_t i = 0; i < max_exp_bits; i++) {
        powers_.push_back(cur);
        cur = ctx.mul(cur, cur);
    }
}

PowmodResult powmod_fixed_base(const FixedBaseTable& table, const Natural& exp, bool parallel) {
    if (bit_length(exp) > table.size())
        throw ParameterError("fixed-base powmod: exponent exceeds table coverage");
    if (exp == 0)
        return {Natural(1) % table.modulus(), {}};

    BarrettCtx ctx(table.modulus());
    std::vector<Natural> level;
    for (std::size_t i = 0; i < table.size(); i++)
        if (test_bit(exp, i))
            level.push_back(table.power(i));

    // Balanced pairwise combination; each level adds one multiplication to
    // the dependency chain regardless of worker count.
    DepthTrace trace;
    while (level.size() > 1) {
        std::size_t pairs = level.size() / 2;
        std::vector<Natural> next(pairs + (level.size() & 1));
        auto combine = [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; i++)
                next[i] = ctx.mul(level[2 * i], level[2 * i + 1]);
        };
        if (parallel && pairs >= 8) {
            unsigned nw = std::min<unsigned>(std::thread::hardware_concurrency(), 8);
            std::vector<std::future<void>> futs;
            std::size_t chunk = (pairs + nw - 1) / nw;
            for (std::size_t lo = 0; lo < pairs; lo += chunk)
                futs.push_back(std::async(std::launch::async, combine, lo,
                                          std::min(lo + chunk, pairs)));
            for (auto& f : futs)
                f.get();
        } else {
            combine(0, pairs);
        }
        if (level.size() & 1)
            next.back() = level.back();
        trace.total_mults += pairs;
        trace.sequential_depth += 1;
        level = std::move(next);
    }
    return {std::move(level.front()), trace};
}

namespace {

constexpr char kTableMagic[4] = {'C', 'L', 'F', 'B'};
constexpr std::uint8_t kTableVersion = 1;

void append_u32(Bytes& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

std::uint32_t read_u32(const Bytes& in, std::size_t& off) {
    if (off + 4 > in.size())
        throw FormatError("fixed-base table: truncated header");
    std::uint32_t v = (std::uint32_t(in[off]) << 24) | (std::uint32_t(in[off + 1]) << 16) |
                      (std::uint32_t(in[off + 2]) << 8) | std::uint32_t(in[off + 3]);
    off += 4;
    return v;
}

} // namespace

Bytes FixedBaseTable::serialize() const {
    Bytes out(kTableMagic, kTableMagic + 4);
    out.push_back(kTableVersion);
    append_u32(out, static_cast<std::uint32_t>(powers_.size()));
    Bytes mod = to_bytes_be(modulus_);
    append_u32(out, static_cast<std::uint32_t>(mod.size()));
    out.insert(out.end(), mod.begin(), mod.end());
    std::size_t width = (bit_length(modulus_) + 7) / 8;
    for (const Natural& p : powers_) {
        Bytes w = to_fixed_bytes_be(p, width);
        out.insert(out.end(), w.begin(), w.end());
    }
    return out;
}

FixedBaseTable FixedBaseTable::deserialize(const Bytes& data) {
    if (data.size() < 5 || std::memcmp(data.data(), kTableMagic, 4) != 0)
        throw FormatError("fixed-base table: bad magic");
    if (data[4] != kTableVersion)
        throw FormatError("fixed-base table: unsupported version");
    std::size_t off = 5;
    std::uint32_t count = read_u32(data, off);
    std::uint32_t mod_len = read_u32(data, off);
    if (off + mod_len > data.size())
        throw FormatError("fixed-base table: truncated modulus");
    FixedBaseTable t;
    t.modulus_ = from_bytes_be(data.data() + off, mod_len);
    off += mod_len;
    std::size_t width = (bit_length(t.modulus_) + 7) / 8;
    if (off + std::size_t(count) * width != data.size())
        throw FormatError("fixed-base table: entry section size mismatch");
    t.powers_.reserve(count);
    for (std::uint32_t i = 0; i < count; i++) {
        t.powers_.push_back(from_bytes_be(data.data() + off, width));
        off += width;
    }
    t.base_ = count > 0 ? t.powers_[0] : Natural(0);
    return t;
}

} // namespace cubelock
