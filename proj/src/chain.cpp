#include "cubelock/chain.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "cubelock/crypto.hpp"
#include "cubelock/errors.hpp"

namespace cubelock {

namespace {

std::string canonical_body(const Natural& p, const std::vector<ChainStage>& stages) {
    std::ostringstream out;
    out << "p=" << to_hex(p) << "\n";
    for (const auto& st : stages) {
        out << "stage=" << perm_kind_name(st.kind) << ":" << st.rounds << ":";
        static const char* digits = "0123456789abcdef";
        for (std::uint8_t b : st.key) {
            out << digits[b >> 4] << digits[b & 0xf];
        }
        out << "\n";
    }
    return out.str();
}

} // namespace

ChainSpec::ChainSpec(Natural p, std::vector<ChainStage> stages)
    : p_(std::move(p)), stages_(std::move(stages)) {
    if (p_ < 5 || mpz_even_p(p_.get_mpz_t()))
        throw ParameterError("chain: p must be an odd prime >= 5");
    Natural two_p_minus_1 = 2 * p_ - 1;
    if (two_p_minus_1 % 3 != 0)
        throw ParameterError("chain: cubing is not invertible for this p");
    b_ = two_p_minus_1 / 3;

    pair_domain_ = !stages_.empty() && stages_.front().kind == PermKind::PairMap;
    for (const auto& st : stages_)
        if ((st.kind == PermKind::PairMap) != pair_domain_)
            throw ParameterError("chain: pair-map stages cannot be mixed with scalar stages");
    value_domain_ = pair_domain_ ? Natural(p_ * p_) : p_;

    perms_.reserve(stages_.size());
    for (const auto& st : stages_) {
        std::uint32_t r = st.rounds != 0 ? st.rounds : static_cast<std::uint32_t>(bit_length(p_));
        if (st.kind == PermKind::PairMap)
            perms_.emplace_back(st.kind, value_domain_, st.key, r, p_);
        else
            perms_.emplace_back(st.kind, p_, st.key, r);
    }

    Bytes body;
    std::string text = canonical_body(p_, stages_);
    body.assign(text.begin(), text.end());
    chain_id_ = fingerprint_hex(body);
}

ChainSpec ChainSpec::build(const Natural& p,
                           const std::vector<std::pair<PermKind, std::uint32_t>>& kinds,
                           RandomSource& rng) {
    std::vector<ChainStage> stages;
    stages.reserve(kinds.size());
    for (auto [kind, rounds] : kinds)
        stages.push_back({kind, rounds, rng.bytes(32)});
    return ChainSpec(p, std::move(stages));
}

std::string ChainSpec::to_text() const {
    return "cubelock-chain v1\n" + canonical_body(p_, stages_);
}

ChainSpec ChainSpec::from_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    if (!std::getline(in, line) || (lineno++, line != "cubelock-chain v1"))
        throw FormatError("chain file: missing \"cubelock-chain v1\" header", 1);
    Natural p;
    bool have_p = false;
    std::vector<ChainStage> stages;
    while (std::getline(in, line)) {
        lineno++;
        if (line.empty())
            continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw FormatError("chain file: expected key=value", lineno);
        std::string key = line.substr(0, eq), val = line.substr(eq + 1);
        if (key == "p") {
            p = from_hex(val);
            have_p = true;
        } else if (key == "stage") {
            auto c1 = val.find(':');
            auto c2 = val.find(':', c1 == std::string::npos ? c1 : c1 + 1);
            if (c1 == std::string::npos || c2 == std::string::npos)
                throw FormatError("chain file: stage needs kind:rounds:key", lineno);
            ChainStage st;
            try {
                st.kind = perm_kind_from_name(val.substr(0, c1));
                st.rounds = static_cast<std::uint32_t>(std::stoul(val.substr(c1 + 1, c2 - c1 - 1)));
            } catch (const std::exception& e) {
                throw FormatError(std::string("chain file: ") + e.what(), lineno);
            }
            std::string hex = val.substr(c2 + 1);
            if (hex.empty() || hex.size() % 2 != 0)
                throw FormatError("chain file: stage key must be whole hex bytes", lineno);
            for (std::size_t i = 0; i < hex.size(); i += 2)
                st.key.push_back(
                    static_cast<std::uint8_t>(std::stoul(hex.substr(i, 2), nullptr, 16)));
            stages.push_back(std::move(st));
        } else {
            throw FormatError("chain file: unknown key \"" + key + "\"", lineno);
        }
    }
    if (!have_p)
        throw FormatError("chain file: missing p");
    return ChainSpec(p, std::move(stages));
}

namespace {

Natural cube_componentwise(const BarrettCtx& ctx, const ChainSpec& spec, const Natural& v) {
    if (!spec.pair_domain())
        return ctx.mul(ctx.mul(v, v), v);
    Natural hi = v / spec.p(), lo = v % spec.p();
    Natural chi = ctx.mul(ctx.mul(hi, hi), hi);
    Natural clo = ctx.mul(ctx.mul(lo, lo), lo);
    return chi * spec.p() + clo;
}

} // namespace

Natural chain_apply(const ChainSpec& spec, const Natural& x) {
    if (x < 0 || x >= spec.value_domain())
        throw ParameterError("chain: value outside the domain");
    BarrettCtx ctx(spec.p());
    Natural v = x;
    for (const Permutation& g : spec.permutations()) {
        v = g.forward(v);
        v = cube_componentwise(ctx, spec, v);
    }
    return v;
}

Natural chain_invert(const ChainSpec& spec, const Natural& c, DepthTrace* trace, unsigned window,
                     Reduction strategy) {
    if (c < 0 || c >= spec.value_domain())
        throw ParameterError("chain: value outside the domain");
    DepthTrace acc;
    Natural v = c;
    const auto& perms = spec.permutations();
    for (std::size_t i = perms.size(); i-- > 0;) {
        if (!spec.pair_domain()) {
            PowmodResult r = powmod_window(v, spec.b(), spec.p(), window, strategy);
            v = std::move(r.value);
            acc.sequential_depth += r.trace.sequential_depth;
            acc.total_mults += r.trace.total_mults;
        } else {
            Natural hi = v / spec.p(), lo = v % spec.p();
            PowmodResult rh = powmod_window(hi, spec.b(), spec.p(), window, strategy);
            PowmodResult rl = powmod_window(lo, spec.b(), spec.p(), window, strategy);
            v = rh.value * spec.p() + rl.value;
            // the two component exponentiations can run side by side
            acc.sequential_depth +=
                std::max(rh.trace.sequential_depth, rl.trace.sequential_depth);
            acc.total_mults += rh.trace.total_mults + rl.trace.total_mults;
        }
        v = perms[i].inverse(v);
    }
    if (trace)
        *trace = acc;
    return v;
}

namespace {

template <typename F>
double median_seconds(unsigned trials, F&& fn) {
    std::vector<double> times;
    times.reserve(trials);
    for (unsigned i = 0; i < trials; i++) {
        auto t0 = std::chrono::steady_clock::now();
        fn(i);
        auto t1 = std::chrono::steady_clock::now();
        times.push_back(std::chrono::duration<double>(t1 - t0).count());
    }
    std::sort(times.begin(), times.end());
    return times[times.size() / 2];
}

} // namespace

ChainBenchReport chain_bench(const Natural& p, std::uint32_t rounds, unsigned trials) {
    ChainBenchReport rep;
    rep.prime_bits = static_cast<unsigned>(bit_length(p));
    rep.rounds = rounds != 0 ? rounds : rep.prime_bits;

    SystemRandom rng;
    BarrettCtx ctx(p);
    std::vector<Natural> inputs;
    for (unsigned i = 0; i < trials; i++)
        inputs.push_back(rng.below(p));

    volatile int sink = 0;
    rep.cubing_s = median_seconds(trials, [&](unsigned i) {
        Natural c = ctx.mul(ctx.mul(inputs[i], inputs[i]), inputs[i]);
        sink += static_cast<int>(mpz_odd_p(c.get_mpz_t()));
    });

    auto run_perm = [&](PermKind kind, std::uint32_t r) {
        Permutation perm(kind, p, rng.bytes(32), r);
        return median_seconds(trials, [&](unsigned i) {
            Natural y = perm.forward(inputs[i]);
            sink += static_cast<int>(mpz_odd_p(y.get_mpz_t()));
        });
    };

    // plain cycle walking needs the prime to sit just under a block
    // boundary; otherwise the both-ends FPE is the practical stage
    try {
        rep.fpe_s = run_perm(PermKind::CycleWalkFpe, 1);
    } catch (const ParameterError&) {
        rep.fpe_s = run_perm(PermKind::BothEnds, 1);
    }
    rep.thorp_s = run_perm(PermKind::Thorp, rep.rounds);
    rep.swap_or_not_s = run_perm(PermKind::SwapOrNot, rep.rounds);
    rep.mix_and_cut_s = run_perm(PermKind::MixAndCut, rep.rounds);
    return rep;
}

std::string chain_bench_table(const ChainBenchReport& r) {
    auto ms = [](double s) {
        std::ostringstream o;
        o.precision(3);
        o << std::fixed << s * 1e3 << "ms";
        return o.str();
    };
    std::ostringstream out;
    out << "chain stage timings at " << r.prime_bits << "-bit p, R=" << r.rounds << "\n";
    out << "Cubing | AES-256 FPE | Thorp | Swap-Or-Not | Mix-And-Cut\n";
    out << ms(r.cubing_s) << " | " << ms(r.fpe_s) << " | " << ms(r.thorp_s) << " | "
        << ms(r.swap_or_not_s) << " | " << ms(r.mix_and_cut_s) << "\n";
    return out.str();
}

} // namespace cubelock
