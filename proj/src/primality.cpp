#include <atomic>
#include <thread>

#include "cubelock/bigmath.hpp"
#include "cubelock/crypto.hpp"

namespace cubelock {

namespace {

// Primes below 50000 for the joint sieve on q and p = 2q+1.
const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> primes = [] {
        constexpr std::uint32_t limit = 50000;
        std::vector<bool> composite(limit, false);
        std::vector<std::uint32_t> out;
        for (std::uint32_t i = 2; i < limit; i++) {
            if (composite[i])
                continue;
            out.push_back(i);
            for (std::uint64_t j = std::uint64_t(i) * i; j < limit; j += i)
                composite[j] = true;
        }
        return out;
    }();
    return primes;
}

bool mr_round(const Natural& n, const Natural& n_minus_1, const Natural& d, std::size_t s,
              const Natural& base) {
    Natural x;
    // The backend exponentiation is used here for speed; the library's own
    // powmod_window is exercised and oracle-checked separately.
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n_minus_1)
        return true;
    for (std::size_t i = 1; i < s; i++) {
        x = (x * x) % n;
        if (x == n_minus_1)
            return true;
        if (x == 1)
            return false;
    }
    return false;
}

bool mr_test(const Natural& n, unsigned rounds, RandomSource& rng) {
    if (n < 2)
        return false;
    for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        if (n == p)
            return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p))
            return false;
    }
    Natural n_minus_1 = n - 1;
    Natural d = n_minus_1;
    std::size_t s = mpz_scan1(d.get_mpz_t(), 0);
    d >>= s;
    // fixed base 2 first: cheap filter before the random rounds
    if (!mr_round(n, n_minus_1, d, s, 2))
        return false;
    for (unsigned i = 1; i < rounds; i++) {
        Natural base = 2 + rng.below(n - 3);
        if (!mr_round(n, n_minus_1, d, s, base))
            return false;
    }
    return true;
}

} // namespace

bool miller_rabin(const Natural& n, unsigned rounds, RandomSource& rng) {
    return mr_test(n, rounds, rng);
}

bool is_safe_prime(const Natural& p, unsigned rounds) {
    if (p < 5)
        return false;
    SystemRandom rng;
    if (!mr_test(p, rounds, rng))
        return false;
    Natural q = (p - 1) / 2;
    return mr_test(q, rounds, rng);
}

Natural gen_safe_prime(unsigned bits, RandomSource& rng, unsigned workers) {
    if (bits < 3)
        throw ParameterError("gen_safe_prime: need at least 3 bits");
    if (bits == 3)
        return rng.next_u64() & 1 ? 5 : 7;

    const auto& primes = small_primes();
    constexpr std::size_t kBlock = 1 << 14; // candidates per sieve window

    for (;;) {
        // Random odd starting point with the top bit set, scanned upward.
        Natural q0 = rng.bits(bits - 1);
        mpz_setbit(q0.get_mpz_t(), bits - 2);
        mpz_setbit(q0.get_mpz_t(), 0);

        // survivors[i] == true while q0 + 2i may give a safe prime
        std::vector<bool> alive(kBlock, true);
        std::uint64_t q_min = bits - 2 < 63 ? (1ull << (bits - 2)) : UINT64_MAX;
        for (std::uint32_t r : primes) {
            if (r == 2)
                continue;
            if (r >= q_min)
                break; // tiny widths: q itself may equal a sieve prime
            // q ≡ 0 (mod r) kills q; q ≡ (r-1)/2 (mod r) kills p = 2q+1
            std::uint32_t q_mod = static_cast<std::uint32_t>(mpz_fdiv_ui(q0.get_mpz_t(), r));
            std::uint32_t inv2 = (r + 1) / 2; // 2^-1 mod r
            for (std::uint32_t bad : {std::uint32_t(0), r - inv2}) {
                // smallest i >= 0 with q0 + 2i ≡ bad (mod r)
                std::uint64_t delta = (bad + r - q_mod) % r;
                if (delta % 2 != 0)
                    delta += r;
                for (std::uint64_t i = delta / 2; i < kBlock; i += r)
                    alive[i] = false;
            }
        }

        std::vector<std::size_t> candidates;
        for (std::size_t i = 0; i < kBlock; i++)
            if (alive[i])
                candidates.push_back(i);

        // Per-candidate deterministic base streams keep the search result
        // independent of worker scheduling.
        Prf base_seed(rng.bytes(32));
        auto test_candidate = [&](std::size_t idx) {
            Natural q = q0 + 2 * Natural(static_cast<unsigned long>(candidates[idx]));
            if (bit_length(q) != bits - 1)
                return false;
            Bytes seed(32);
            base_seed.stream(0x10, candidates[idx], seed.data(), seed.size());
            CtrDrbg local(seed);
            if (!mr_test(q, 1, local))
                return false;
            Natural p = 2 * q + 1;
            if (!mr_test(p, 1, local))
                return false;
            return mr_test(q, 64, local) && mr_test(p, 64, local);
        };

        if (workers <= 1) {
            for (std::size_t i = 0; i < candidates.size(); i++)
                if (test_candidate(i))
                    return 2 * (q0 + 2 * Natural(static_cast<unsigned long>(candidates[i]))) + 1;
        } else {
            std::atomic<std::size_t> next{0};
            std::atomic<std::size_t> found{candidates.size()};
            auto worker = [&] {
                for (;;) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= candidates.size() || i >= found.load())
                        return;
                    if (test_candidate(i)) {
                        // keep the lowest-index success
                        std::size_t cur = found.load();
                        while (i < cur && !found.compare_exchange_weak(cur, i)) {
                        }
                    }
                }
            };
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < workers; t++)
                pool.emplace_back(worker);
            for (auto& t : pool)
                t.join();
            if (found.load() < candidates.size())
                return 2 * (q0 + 2 * Natural(static_cast<unsigned long>(candidates[found.load()]))) + 1;
        }
        // window exhausted; draw a fresh start
    }
}

} // namespace cubelock
