#include "pdlsep/measure.hpp"

#include <algorithm>

namespace pdlsep {

bool lex_gt(const OrdinalSeq& u, const OrdinalSeq& v) {
    if (u.size() != v.size()) return u.size() > v.size();
    for (std::size_t k = 0; k < u.size(); ++k)
        if (u[k] != v[k]) return u[k] > v[k];
    return false;
}

bool measure_gt(const Measure& m, const Measure& n) {
    if (m == n) return false;
    std::vector<const OrdinalSeq*> removed;
    for (const auto& x : m)
        if (!n.count(x)) removed.push_back(&x);
    if (removed.empty()) return false;
    for (const auto& y : n) {
        if (m.count(y)) continue;
        bool dominated = std::any_of(removed.begin(), removed.end(),
                                     [&](const OrdinalSeq* x) { return lex_gt(*x, y); });
        if (!dominated) return false;
    }
    return true;
}

Measure cons(OmegaPlusOne k, const Measure& m) {
    Measure out;
    for (const auto& s : m) {
        OrdinalSeq t;
        t.reserve(s.size() + 1);
        t.push_back(k);
        t.insert(t.end(), s.begin(), s.end());
        out.insert(std::move(t));
    }
    return out;
}

std::string to_string(const OrdinalSeq& s) {
    std::string out = "[";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ", ";
        out += s[i].str();
    }
    return out + "]";
}

std::string to_string(const Measure& m) {
    std::string out = "{";
    bool first = true;
    for (const auto& s : m) {
        if (!first) out += ", ";
        first = false;
        out += to_string(s);
    }
    return out + "}";
}

}  // namespace pdlsep
