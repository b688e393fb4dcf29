#include "cubelock/curated.hpp"

#include <fstream>
#include <regex>

#include "cubelock/errors.hpp"

namespace cubelock {

Natural eval_prime_expr(const std::string& expr) {
    static const std::regex form(R"(^\s*(\d+)\s*\*\s*2\^(\d+)\s*(?:([+-])\s*(\d+))?\s*$)");
    std::smatch m;
    if (!std::regex_match(expr, m, form))
        throw FormatError("prime expression must look like k*2^e+d: \"" + expr + "\"");
    Natural k(m[1].str());
    unsigned long e = std::stoul(m[2].str());
    Natural v = k << e;
    if (m[3].matched) {
        Natural d(m[4].str());
        v += m[3].str() == "+" ? d : -d;
    }
    if (v <= 0)
        throw FormatError("prime expression evaluates to a non-positive value");
    return v;
}

Natural CuratedPrime::value() const {
    return eval_prime_expr(expr);
}

const std::vector<CuratedPrime>& curated_primes() {
    static const std::vector<CuratedPrime> list = {
        {"168851511*2^33251-1", 33279},
        {"1022253375*2^43489-1", 43519},
        {"1030710193*2^44001+3", 44031},
        {"2566851867*2^70002-1", 70034},
    };
    return list;
}

std::vector<CuratedPrime> load_curated_primes(const std::string& path) {
    std::vector<CuratedPrime> list = curated_primes();
    if (path.empty())
        return list;
    std::ifstream in(path);
    if (!in)
        throw FormatError("cannot open curated prime list: " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        lineno++;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        try {
            Natural v = eval_prime_expr(line);
            list.push_back({line, static_cast<unsigned>(bit_length(v))});
        } catch (const FormatError& e) {
            throw FormatError(e.what(), lineno);
        }
    }
    return list;
}

} // namespace cubelock
