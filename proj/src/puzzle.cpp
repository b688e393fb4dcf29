#include "cubelock/puzzle.hpp"

#include <chrono>
#include <cmath>
#include <numeric>

#include "cubelock/crypto.hpp"
#include "cubelock/curated.hpp"
#include "cubelock/errors.hpp"

namespace cubelock {

PuzzleParams PuzzleParams::from_prime(Natural p, double T, double lambda, bool validate) {
    if (p < 5)
        throw ParameterError("puzzle: prime too small");
    if (validate && !is_safe_prime(p))
        throw ParameterError("puzzle: p is not a safe prime");
    Natural two_p_minus_1 = 2 * p - 1;
    if (two_p_minus_1 % 3 != 0)
        throw ParameterError("puzzle: 1 + 2(p-1) not divisible by 3 (p = 7 or not 2 mod 3)");
    PuzzleParams params;
    params.p = std::move(p);
    params.b = two_p_minus_1 / 3;
    params.T = T;
    params.lambda = lambda;
    params.n = static_cast<unsigned>(bit_length(params.p));
    params.fingerprint = fingerprint_hex(to_bytes_be(params.p));
    return params;
}

PuzzleParams setup(double T, double lambda, RandomSource& rng, SetupInfo* info,
                   const std::string& curated_path, unsigned workers) {
    double target = lambda * T;
    if (!(target >= kMinSetupBits))
        throw ParameterError("setup: lambda*T must be at least " + std::to_string(kMinSetupBits));
    long target_bits = static_cast<long>(std::llround(target));
    SetupInfo local;
    local.target_bits = target_bits;

    PuzzleParams params;
    if (target_bits > long(kCuratedThresholdBits)) {
        auto list = load_curated_primes(curated_path);
        const CuratedPrime* best = nullptr;
        for (const auto& cp : list)
            if (!best || std::labs(long(cp.bits) - 1 - target_bits) <
                             std::labs(long(best->bits) - 1 - target_bits))
                best = &cp;
        if (!best)
            throw ParameterError("setup: curated prime list is empty");
        local.curated = true;
        // these primes are far beyond practical Miller-Rabin budgets here
        params = PuzzleParams::from_prime(best->value(), T, lambda, /*validate=*/false);
    } else {
        unsigned bits = static_cast<unsigned>(target_bits) + 1; // floor(log2 p) = bits-1
        params = PuzzleParams::from_prime(gen_safe_prime(bits, rng, workers), T, lambda,
                                          /*validate=*/false);
    }
    local.deviation_bits = long(params.n) - 1 - target_bits;
    if (info)
        *info = local;
    return params;
}

namespace {

constexpr unsigned kLenFieldBits = 32;

// Seed and fill are bit strings; we keep them as packed bytes, bit i of the
// string at byte i/8, LSB first.
bool get_bit(const Bytes& packed, std::size_t i) {
    return (packed[i / 8] >> (i % 8)) & 1;
}

} // namespace

long max_message_bytes(const PuzzleParams& params, unsigned seed_bit_len) {
    // layout precondition: 32 + 8*len + l + 1 <= n - 2
    long room = long(params.n) - 2 - 1 - long(kLenFieldBits) - long(seed_bit_len);
    return room < 0 ? -1 : room / 8;
}

Natural pad(const Bytes& message, const Bytes& seed_bits, unsigned seed_bit_len,
            const PuzzleParams& params) {
    if (seed_bits.size() * 8 < seed_bit_len)
        throw ParameterError("pad: seed shorter than its declared bit length");
    long cap = max_message_bytes(params, seed_bit_len);
    if (cap < 0 || message.size() > static_cast<std::size_t>(cap))
        throw CapacityError("pad: message does not fit below the marker bit");

    Natural x = static_cast<unsigned long>(message.size());
    std::size_t pos = kLenFieldBits;
    for (std::size_t i = 0; i < message.size(); i++) {
        for (unsigned b = 0; b < 8; b++)
            if ((message[i] >> b) & 1)
                mpz_setbit(x.get_mpz_t(), pos + b);
        pos += 8;
    }
    for (std::size_t i = 0; i < seed_bit_len; i++, pos++)
        if (get_bit(seed_bits, i))
            mpz_setbit(x.get_mpz_t(), pos);

    // deterministic fill keyed by the seed, up to (not including) bit n-2
    std::size_t marker = params.n - 2;
    if (pos < marker) {
        std::size_t fill_bits = marker - pos;
        Prf gen(seed_bits);
        Bytes fill((fill_bits + 7) / 8);
        gen.stream(0x20, 0, fill.data(), fill.size());
        for (std::size_t i = 0; i < fill_bits; i++, pos++)
            if (get_bit(fill, i))
                mpz_setbit(x.get_mpz_t(), pos);
    }
    mpz_setbit(x.get_mpz_t(), marker);
    return x;
}

Bytes unpad(const Natural& x, const PuzzleParams& params) {
    std::size_t marker = params.n - 2;
    if (bit_length(x) != marker + 1)
        throw IntegrityError("unpad: marker bit missing or value out of range");
    unsigned long len = extract_bits(x, 0, kLenFieldBits);
    if (kLenFieldBits + 8 * len + 1 > marker)
        throw IntegrityError("unpad: declared message length inconsistent with the prime size");
    Bytes message(len);
    std::size_t pos = kLenFieldBits;
    for (unsigned long i = 0; i < len; i++, pos += 8)
        message[i] = static_cast<std::uint8_t>(extract_bits(x, pos, 8));
    return message;
}

EncryptResult encrypt(const Bytes& message, const PuzzleParams& params, RandomSource& rng,
                      unsigned seed_bit_len) {
    Bytes seed = rng.bytes((seed_bit_len + 7) / 8);
    Natural x = pad(message, seed, seed_bit_len, params);

    BarrettCtx ctx(params.p);
    Natural sq = ctx.mul(x, x);
    Natural c = ctx.mul(sq, x);

    EncryptResult out;
    out.ct.c = std::move(c);
    out.ct.fingerprint = params.fingerprint;
    out.ct.seed_bits = seed_bit_len;
    out.trace = {2, 2};
    return out;
}

Natural encrypt_value(const PuzzleParams& params, const Natural& x) {
    BarrettCtx ctx(params.p);
    return ctx.mul(ctx.mul(x, x), x);
}

PowmodResult decrypt_value(const PuzzleParams& params, const Natural& c, unsigned window,
                           Reduction strategy) {
    return powmod_window(c, params.b, params.p, window, strategy);
}

DecryptResult decrypt(const Ciphertext& ct, const PuzzleParams& params, unsigned window,
                      Reduction strategy) {
    if (ct.fingerprint != params.fingerprint)
        throw WrongKeyError("decrypt: ciphertext was made for a different prime");
    auto t0 = std::chrono::steady_clock::now();
    PowmodResult r = decrypt_value(params, ct.c, window, strategy);
    auto t1 = std::chrono::steady_clock::now();
    DecryptResult out;
    out.message = unpad(r.value, params);
    out.trace = r.trace;
    out.seconds = std::chrono::duration<double>(t1 - t0).count();
    return out;
}

unsigned seed_length_bound(double concurrent_guessers, unsigned prime_bits, double epsilon) {
    if (concurrent_guessers < 1)
        throw ParameterError("seed bound: C must be at least 1");
    if (!(epsilon > 0) || !(epsilon < 1))
        throw ParameterError("seed bound: epsilon must be in (0, 1)");
    if (prime_bits < 2)
        throw ParameterError("seed bound: n must be at least 2");
    // conservative: round each log term up before applying the strict bound
    long bound = static_cast<long>(std::ceil(std::log2(concurrent_guessers))) +
                 static_cast<long>(std::ceil(std::log2(double(prime_bits) - 1))) +
                 static_cast<long>(std::ceil(-std::log2(epsilon))) - 1;
    return bound < 0 ? 0 : static_cast<unsigned>(bound) + 1;
}

std::uint64_t Theorem1Result::h_eps(std::uint32_t eps) const {
    std::uint64_t n = 0;
    for (const auto& [bits, count] : bits_histogram)
        if (h_bits - bits < eps)
            n += count;
    return n;
}

std::uint64_t Theorem1Result::k_eps(std::uint32_t eps) const {
    return unit_count - h_eps(eps);
}

namespace {

std::uint32_t bit_width_u64(std::uint64_t v) {
    std::uint32_t b = 0;
    while (v) {
        b++;
        v >>= 1;
    }
    return b;
}

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1)
            r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

std::vector<std::pair<std::uint64_t, unsigned>> factorize_u64(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, unsigned>> f;
    for (std::uint64_t d = 2; d * d <= n; d += d == 2 ? 1 : 2) {
        unsigned e = 0;
        while (n % d == 0) {
            n /= d;
            e++;
        }
        if (e)
            f.push_back({d, e});
    }
    if (n > 1)
        f.push_back({n, 1});
    return f;
}

// Exact multiplicative order via the factored group exponent.
std::uint64_t element_order(std::uint64_t x, std::uint64_t m, std::uint64_t lambda,
                            const std::vector<std::pair<std::uint64_t, unsigned>>& lambda_factors) {
    std::uint64_t ord = lambda;
    for (const auto& [p, e] : lambda_factors) {
        for (unsigned i = 0; i < e; i++) {
            if (powmod_u64(x, ord / p, m) == 1)
                ord /= p;
            else
                break;
        }
    }
    return ord;
}

std::uint64_t inverse_of_3_mod(std::uint64_t ord) {
    if (ord == 1)
        return 0;
    // ord not divisible by 3 here
    return ord % 3 == 1 ? (2 * ord + 1) / 3 : (ord + 1) / 3;
}

} // namespace

Theorem1Result theorem1_oracle(std::uint32_t m) {
    if (m < 2)
        throw ParameterError("theorem1: modulus must be at least 2");
    if (m > kTheorem1Cap)
        throw CapacityError("theorem1: modulus too large for full enumeration");

    // group exponent lambda(m) = lcm of cyclic component orders
    std::uint64_t lambda = 1;
    {
        auto mf = factorize_u64(m);
        for (const auto& [p, e] : mf) {
            std::uint64_t comp;
            if (p == 2)
                comp = e == 1 ? 1 : (e == 2 ? 2 : (1ull << (e - 2)));
            else {
                comp = p - 1;
                for (unsigned i = 1; i < e; i++)
                    comp *= p;
            }
            lambda = std::lcm(lambda, comp);
        }
    }
    auto lf = factorize_u64(lambda);

    Theorem1Result res;
    res.m = m;
    for (std::uint64_t x = 1; x < m; x++) {
        if (std::gcd(x, static_cast<std::uint64_t>(m)) != 1)
            continue;
        res.unit_count++;
        std::uint64_t ord = element_order(x, m, lambda, lf);
        if (ord % 3 == 0) {
            res.no_inverse_count++;
            continue;
        }
        std::uint64_t b = inverse_of_3_mod(ord);
        res.bits_histogram[bit_width_u64(b)]++;
    }
    res.h_bits = res.bits_histogram.empty() ? 0 : res.bits_histogram.rbegin()->first;
    return res;
}

} // namespace cubelock
