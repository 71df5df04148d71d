// Criteria 7-9: model checking, pre* saturation and pumping.

#include <deque>
#include <filesystem>
#include <functional>
#include <map>

#include "criteria.hpp"
#include "pdlsep/lts.hpp"
#include "pdlsep/model_checker.hpp"
#include "pdlsep/pushdown.hpp"
#include "pdlsep/separation.hpp"

namespace pdlsep::acceptance {

namespace {

const LetterSet kLetters{'a', 'b', '$'};

std::set<std::string> random_label(Rng& rng) {
    std::set<std::string> l;
    if (pick(rng, 2)) l.insert("p");
    if (pick(rng, 3) == 0) l.insert("q");
    return l;
}

Structure random_dag(Rng& rng) {
    Structure m;
    const int n = 1 + static_cast<int>(pick(rng, 12));
    for (int i = 0; i < n; ++i) m.lts.add_state("s" + std::to_string(i), random_label(rng));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (pick(rng, 4) == 0) m.lts.add_edge(i, *std::next(kLetters.begin(), pick(rng, 3)), j);
    return m;
}

Structure random_cyclic(Rng& rng) {
    Structure m;
    const int n = 2 + static_cast<int>(pick(rng, 7));
    for (int i = 0; i < n; ++i) m.lts.add_state("s" + std::to_string(i), random_label(rng));
    for (int i = 0; i < n; ++i)
        for (std::size_t k = pick(rng, 3); k > 0; --k)
            m.lts.add_edge(i, *std::next(kLetters.begin(), pick(rng, 3)), static_cast<int>(pick(rng, n)));
    // A back edge onto the root closes at least one cycle.
    m.lts.add_edge(n - 1, 'a', 0);
    if (n > 1) m.lts.add_edge(0, 'b', n - 1);
    return m;
}

const Environment& mixed_env() {
    static const Environment e = parse_environment(R"(
alphabet ab
lang A finite: a
lang AB finite: ab, b
lang AE finite: _, a
lang BD finite: b$, ab$
lang PD palindromes: ab $
lang PAL palindromes: ab
lang R regex: a(a|b)*
lang S regex: b*$
)");
    return e;
}

bool literal_holds(const Formula& body, const std::set<std::string>& label) {
    switch (body->op) {
        case Op::True: return true;
        case Op::False: return false;
        case Op::Lit: return label.count(body->prop) != body->negated;
        default: throw Error("not a literal");
    }
}

// EF^L φ at s by walking every path of at most `bound` letters.
bool ef_by_paths(const Lts& lts, int s, const Language& l, const Formula& body, std::size_t bound) {
    std::function<bool(int, Word&)> go = [&](int v, Word& w) {
        if (l.member(w) && literal_holds(body, lts.labels[v])) return true;
        if (w.size() == bound) return false;
        for (auto [a, t] : lts.succ[v]) {
            w.push_back(a);
            const bool hit = go(t, w);
            w.pop_back();
            if (hit) return true;
        }
        return false;
    };
    Word w;
    return go(s, w);
}

}  // namespace

Outcome model_checker_cross() {
    Rng rng(kSeed + 7);
    std::vector<Formula> formulas;
    FormulaShape finite_shape;
    FormulaShape mixed_shape;
    mixed_shape.env = &mixed_env();
    for (int i = 0; i < 50; ++i) formulas.push_back(random_formula(rng, i % 2 ? mixed_shape : finite_shape));
    Failures fails;
    std::size_t checks = 0;
    for (int k = 0; k < 300; ++k) {
        Structure m = random_dag(rng);
        const std::size_t bound = m.lts.longest_path();
        for (const auto& f : formulas) {
            ++checks;
            if (check(m, f) != naive_check(m, f, bound)) fails.add(f->key + " on dag " + std::to_string(k));
        }
    }
    std::size_t cyclic_checks = 0;
    const Environment& fe = finite_env();
    for (int k = 0; k < 20; ++k) {
        Structure m = random_cyclic(rng);
        for (const auto& [name, lang] : fe.languages())
            for (const Formula& body : {f_true(), f_lit("p"), f_lit("p", true), f_lit("q")}) {
                Formula f = f_ef(lang, body);
                auto sat = sat_states(m.lts, f);
                for (int s = 0; s < m.lts.size(); ++s) {
                    ++cyclic_checks;
                    if (sat[s] != ef_by_paths(m.lts, s, *lang, body, 12))
                        fails.add(f->key + " at s" + std::to_string(s) + " of cyclic " + std::to_string(k));
                }
            }
    }
    if (fails.count()) return {false, fails.summary()};
    return {true, std::to_string(checks) + " acyclic and " + std::to_string(cyclic_checks) +
                      " cyclic state checks agree"};
}

namespace {

using Conf = std::pair<int, std::vector<int>>;  // stack top first

std::vector<std::vector<int>> stacks_upto(int symbols, std::size_t height) {
    std::vector<std::vector<int>> out{{}};
    for (std::size_t i = 0; i < out.size(); ++i)
        if (out[i].size() < height)
            for (int x = 0; x < symbols; ++x) {
                auto s = out[i];
                s.push_back(x);
                out.push_back(s);
            }
    return out;
}

// Configurations with stack height <= horizon that reach `target` along runs
// staying within that height: the least fixed point of the backward step over
// the finite configuration graph.
std::set<Conf> backward_bfs(const Pds& p, const PAutomaton& target, std::size_t horizon) {
    std::map<Conf, std::vector<Conf>> preds;
    std::vector<Conf> all;
    for (int q = 0; q < p.states; ++q)
        for (const auto& s : stacks_upto(p.symbols, horizon)) all.push_back({q, s});
    for (const auto& c : all) {
        if (c.second.empty()) continue;
        for (const auto& r : p.rules) {
            if (r.from != c.first || r.top != c.second.front()) continue;
            std::vector<int> s = r.push;
            s.insert(s.end(), c.second.begin() + 1, c.second.end());
            if (s.size() <= horizon) preds[{r.to, s}].push_back(c);
        }
    }
    std::set<Conf> good;
    std::deque<Conf> queue;
    for (const auto& c : all)
        if (target.accepts(c.first, c.second)) {
            good.insert(c);
            queue.push_back(c);
        }
    while (!queue.empty()) {
        Conf c = queue.front();
        queue.pop_front();
        for (const auto& b : preds[c])
            if (good.insert(b).second) queue.push_back(b);
    }
    return good;
}

Pds random_pds(Rng& rng) {
    Pds p;
    p.states = 1 + static_cast<int>(pick(rng, 4));
    p.symbols = 1 + static_cast<int>(pick(rng, 3));
    const std::size_t rules = 1 + pick(rng, 8);
    for (std::size_t i = 0; i < rules; ++i) {
        PdsRule r{static_cast<int>(pick(rng, p.states)), static_cast<int>(pick(rng, p.symbols)),
                  static_cast<int>(pick(rng, p.states)), {}};
        for (std::size_t k = pick(rng, 3); k > 0; --k) r.push.push_back(static_cast<int>(pick(rng, p.symbols)));
        p.rules.push_back(r);
    }
    return p;
}

// Either the single configuration (q, X) or every (q, X γ).
PAutomaton random_target(Rng& rng, const Pds& p) {
    PAutomaton t;
    t.control = p.states;
    t.states = p.states + 1;
    const int f = p.states;
    t.trans.insert({static_cast<int>(pick(rng, p.states)), static_cast<int>(pick(rng, p.symbols)), f});
    if (pick(rng, 2))
        for (int x = 0; x < p.symbols; ++x) t.trans.insert({f, x, f});
    t.finals = {f};
    return t;
}

}  // namespace

Outcome pushdown_reachability() {
    Rng rng(kSeed + 8);
    constexpr std::size_t kStack = 4;
    constexpr std::size_t kHorizon = 6;
    Failures fails;
    std::size_t configs = 0;
    for (int k = 0; k < 30; ++k) {
        Pds p = random_pds(rng);
        PAutomaton t = random_target(rng, p);
        PAutomaton fifo = prestar(p, t, Worklist::Fifo);
        PAutomaton lifo = prestar(p, t, Worklist::Lifo);
        auto good = backward_bfs(p, t, kHorizon);
        const std::string name = "system " + std::to_string(k);
        for (int q = 0; q < p.states; ++q) {
            for (const auto& s : stacks_upto(p.symbols, kHorizon)) {
                if (fifo.accepts(q, s) != lifo.accepts(q, s)) fails.add(name + ": fifo and lifo differ");
                if (s.size() > kStack) continue;
                ++configs;
                if (fifo.accepts(q, s) != static_cast<bool>(good.count({q, s})))
                    fails.add(name + ": pre* and search differ");
            }
        }
    }
    if (fails.count()) return {false, fails.summary()};
    return {true, "30 systems, " + std::to_string(configs) + " configurations agree; fifo and lifo agree"};
}

Outcome pumping() {
    const std::filesystem::path data = PDLSEP_TEST_DATA;
    const Word limit = limit_word_prefix("", 1u << 14);
    Failures fails;
    std::string shown;
    for (const char* name : {"all01", "parity", "zeros", "ones", "mod3"}) {
        Dpda d = parse_dpda(read_file(data / (std::string(name) + ".dpda")));
        PumpingDecomposition p = pump_decompose(d, [&](std::size_t i) { return limit[i]; }, 5, limit.size());
        DpdaRunner run(d);
        bool ok = !p.u1.empty() && p.checked.size() == 5;
        for (const auto& x : p.checked)
            if (run.accepts(p.u0 + p.u1 + x) && !run.accepts(p.u0 + x)) ok = false;
        if (!ok) fails.add(name);
        shown += std::string(shown.empty() ? "" : ", ") + name + " u1=" + p.u1;
    }
    if (fails.count()) return {false, fails.summary()};
    return {true, "5 automata pump with 5 rechecked prefixes each (" + shown + ")"};
}

}  // namespace pdlsep::acceptance
