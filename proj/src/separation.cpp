#include "pdlsep/separation.hpp"

#include <algorithm>

#include "pdlsep/kernels.hpp"

namespace pdlsep {

std::set<Word> lang_of_formula(const Formula& f, const Alphabet& sigma, std::size_t max_len, int jobs) {
    return jobs > 1 ? lang_of_formula_parallel(f, sigma, max_len, jobs) : lang_of_formula_serial(f, sigma, max_len);
}

ElimDollarResult elim_dollar(const Formula& delta, const LangPtr& l0, const Formula& psi, const LetterSet& letters,
                             SearchBounds bounds, int jobs) {
    ElimDollarResult r;
    auto [l1, l2] = l0->dollar_split();
    r.l1 = l1;
    r.l2 = l2;
    r.l1_empty = l1->is_empty();
    r.l2_empty = l2->is_empty();
    r.psi_satisfiable = validity(nnf_negate(psi), letters, bounds, jobs);
    r.result = f_or(f_or(delta, f_ef(l1, psi)), f_ef(l2, f_true()));
    Formula before = f_or(delta, f_ef(l0, psi));
    r.measure_bounded = !measure_gt(measure(r.result), measure(before));
    return r;
}

std::vector<Word> witness_family(const Word& v, std::size_t count) {
    std::vector<Word> out;
    if (count == 0) return out;
    const Word vr = reversed(v);
    out.push_back(vr);
    for (std::size_t i = 0; out.size() < count; ++i) {
        const Word& w = out.back();
        out.push_back(w + "1" + Word(i, '0') + "1" + reversed(w) + vr);
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (!is_palindrome(v + out[i])) throw Error("witness " + std::to_string(i) + " is not in v\\Pal");
        if (i > 0 && (out[i].size() <= out[i - 1].size() || !is_prefix(out[i - 1], out[i])))
            throw Error("witnesses " + std::to_string(i - 1) + " and " + std::to_string(i) + " are not prefix-ordered");
    }
    return out;
}

Word limit_word_prefix(const Word& v, std::size_t n) {
    const Word vr = reversed(v);
    Word w = vr;
    for (std::size_t i = 0; w.size() < n; ++i) {
        Word next = w + "1" + Word(i, '0') + "1" + reversed(w) + vr;
        w = std::move(next);
    }
    return w.substr(0, n);
}

std::optional<std::pair<std::size_t, std::size_t>> first_new_block(const Word& w, std::size_t from) {
    std::set<std::size_t> seen;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] != '1') continue;
        std::size_t j = i + 1;
        while (j < w.size() && w[j] == '0') ++j;
        if (j >= w.size() || w[j] != '1') continue;
        const std::size_t kappa = j - i - 1;
        const std::size_t end = j + 1;
        bool fresh = seen.insert(kappa).second;
        if (fresh && end >= from) return std::make_pair(kappa, end);
    }
    return std::nullopt;
}

bool prefix_ordered(const std::set<Word>& sample) {
    std::vector<Word> v(sample.begin(), sample.end());
    std::sort(v.begin(), v.end(), [](const Word& a, const Word& b) { return a.size() < b.size(); });
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!is_prefix(v[i - 1], v[i])) return false;
    return true;
}

BoundRResult bound_r_decompose(const Word& u0, const Word& u1, const std::set<Word>& r_sample) {
    BoundRResult res;
    if (u0.size() >= u1.size() || !is_prefix(u0, u1)) {
        res.valid = false;
        res.problem = "u0 is not a proper prefix of u1";
        return res;
    }
    res.uhat = u1.substr(u0.size());
    const std::size_t k = res.uhat.size();
    for (const auto& w : r_sample) {
        if (!is_palindrome(u0 + w) || !is_palindrome(u1 + w)) {
            res.valid = false;
            res.problem = "u0·w or u1·w is not a palindrome for w = " + show_word(w);
            return res;
        }
        BoundRResult::Entry e;
        e.w = w;
        e.n = w.size() >= u0.size() ? (w.size() - u0.size()) / k : 0;
        Word power;
        for (std::size_t i = 0; i < e.n; ++i) power += res.uhat;
        e.residual = w.substr(e.n * k);
        if (!is_prefix(power, w) || power + e.residual != w) {
            res.valid = false;
            res.problem = "û^N is not a prefix of " + show_word(w);
            return res;
        }
        if (e.residual.size() > u0.size() + k) {
            res.valid = false;
            res.problem = "residual of " + show_word(w) + " exceeds |u0| + |û|";
            return res;
        }
        res.Uhat.insert(e.residual);
        res.per_word.push_back(std::move(e));
    }
    return res;
}

namespace {

// A finite word or an ultimately periodic infinite one, prefix + period^ω.
struct Path {
    Word prefix;
    Word period;

    std::optional<Letter> at(std::size_t i) const {
        if (i < prefix.size()) return prefix[i];
        if (period.empty()) return std::nullopt;
        return period[(i - prefix.size()) % period.size()];
    }
    bool passes(const Word& w) const {
        for (std::size_t i = 0; i < w.size(); ++i)
            if (at(i) != w[i]) return false;
        return true;
    }
};

// Extends `w` until no path passes it: step to a free child if there is
// one, otherwise to the child passed by the fewest paths.
Word step_off(Word w, const std::vector<Path>& paths, const std::vector<Letter>& letters) {
    std::vector<const Path*> live;
    for (const auto& p : paths)
        if (p.passes(w)) live.push_back(&p);
    while (!live.empty()) {
        std::optional<Letter> chosen;
        std::vector<const Path*> best;
        for (Letter a : letters) {
            std::vector<const Path*> through;
            for (const auto* p : live)
                if (p->at(w.size()) == a) through.push_back(p);
            if (!chosen || through.size() < best.size()) {
                chosen = a;
                best = std::move(through);
            }
            if (best.empty()) break;
        }
        w.push_back(*chosen);
        live = std::move(best);
    }
    return w;
}

Word power(const Word& u, std::size_t n) {
    Word out;
    for (std::size_t i = 0; i < n; ++i) out += u;
    return out;
}

// Exponents j with |u0 u1^j| <= limit (only j = 0 when u1 is empty).
std::vector<std::size_t> exponents(std::size_t base, const Word& u, std::size_t limit) {
    std::vector<std::size_t> out;
    if (base > limit) return out;
    if (u.empty()) return {0};
    for (std::size_t j = 0; base + j * u.size() <= limit; ++j) out.push_back(j);
    return out;
}

}  // namespace

Word orthogonal_word(const std::vector<Quad>& quads, const LetterSet& letters) {
    if (letters.size() < 2) throw Error("orthogonal_word needs at least two letters");
    std::vector<Letter> ls(letters.begin(), letters.end());

    std::vector<Path> stage;
    for (const auto& [u0, u1, u2, u3] : quads) stage.push_back({u0, u1});
    Word w0 = step_off("", stage, ls);

    stage.clear();
    for (const auto& [u0, u1, u2, u3] : quads)
        for (auto j : exponents(u0.size(), u1, w0.size())) stage.push_back({u0 + power(u1, j), u2});
    Word w1 = step_off(w0, stage, ls);

    stage.clear();
    for (const auto& [u0, u1, u2, u3] : quads)
        for (auto j : exponents(u0.size(), u1, w1.size())) {
            Word head = u0 + power(u1, j);
            for (auto k : exponents(head.size(), u2, w1.size())) stage.push_back({head + power(u2, k) + u3, ""});
        }
    Word w = step_off(w1, stage, ls);
    if (w.empty()) w.push_back(ls.front());
    return w;
}

bool orthogonal_valid(const std::vector<Quad>& quads, const Word& w, std::size_t slack) {
    std::size_t longest3 = 0;
    for (const auto& q : quads) longest3 = std::max(longest3, std::get<3>(q).size());
    const std::size_t limit = w.size() + longest3 + slack;
    for (const auto& [u0, u1, u2, u3] : quads)
        for (auto j : exponents(u0.size(), u1, limit)) {
            Word head = u0 + power(u1, j);
            for (auto k : exponents(head.size(), u2, limit)) {
                Word x = head + power(u2, k) + u3;
                if (x.size() <= limit && is_prefix(w, x)) return false;
            }
        }
    return true;
}

std::set<Word> RightFactor::enumerate(const Alphabet& sigma, std::size_t max_len) const {
    std::set<Word> out;
    if (words) {
        for (const auto& w : *words)
            if (w.size() <= max_len) out.insert(w);
    } else if (formula) {
        out = lang_of_formula(formula, sigma, max_len);
    } else if (lang) {
        for (const auto& w : lang->enumerate(max_len))
            if (std::all_of(w.begin(), w.end(), [&](Letter a) { return sigma.contains(a); })) out.insert(w);
    }
    return out;
}

std::string RightFactor::describe() const {
    if (words) {
        std::string s = "{";
        bool first = true;
        for (const auto& w : *words) {
            s += (first ? "" : ", ") + show_word(w);
            first = false;
        }
        return s + "}";
    }
    if (formula) return "Lang(" + formula->key + ")";
    if (lang) return lang->name();
    return "{}";
}

bool GoodDecomposition::strict() const {
    return std::all_of(pairs.begin(), pairs.end(), [](const GoodPair& p) { return p.evidence.has_value(); });
}

std::set<Word> GoodDecomposition::enumerate(const Alphabet& sigma, std::size_t max_len) const {
    std::set<Word> out;
    for (const auto& p : pairs) {
        auto rights = p.right.enumerate(sigma, max_len);
        for (const auto& l : p.left->enumerate(max_len)) {
            if (!std::all_of(l.begin(), l.end(), [&](Letter a) { return sigma.contains(a); })) continue;
            for (const auto& r : rights)
                if (l.size() + r.size() <= max_len) out.insert(l + r);
        }
    }
    return out;
}

GoodCheckResult good_check(const GoodDecomposition& g, const Language& target, const Alphabet& sigma,
                           std::size_t max_len) {
    GoodCheckResult res;
    for (std::size_t i = 0; i < g.pairs.size(); ++i) {
        const auto& p = g.pairs[i];
        if (!p.evidence) {
            res.structural_ok = false;
            res.problems.push_back("pair " + std::to_string(i) + ": no two-word evidence");
            continue;
        }
        const auto& [a, b] = *p.evidence;
        if (a == b || !p.left->member(a) || !p.left->member(b)) {
            res.structural_ok = false;
            res.problems.push_back("pair " + std::to_string(i) + ": evidence words are not two distinct members");
        }
    }
    const std::set<Word> lhs = g.enumerate(sigma, max_len);
    std::set<Word> rhs;
    for (const auto& w : target.enumerate(max_len))
        if (std::all_of(w.begin(), w.end(), [&](Letter a) { return sigma.contains(a); })) rhs.insert(w);
    std::optional<Word> best;
    auto consider = [&](const Word& w, bool in_target) {
        if (!best || ShortLex{}(w, *best)) {
            best = w;
            res.counterexample_in_target = in_target;
        }
    };
    for (const auto& w : lhs)
        if (!rhs.count(w)) consider(w, false);
    for (const auto& w : rhs)
        if (!lhs.count(w)) consider(w, true);
    res.counterexample = best;
    return res;
}

}  // namespace pdlsep
