#include "pdlsep/model_checker.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace pdlsep {

namespace {

// States from which some path labeled by a word of L ends in `target`.
std::vector<bool> reach_by(const Lts& lts, const Language& l, const std::vector<bool>& target) {
    const int n = lts.size();
    std::vector<std::vector<std::pair<Letter, int>>> pred(n);
    for (int s = 0; s < n; ++s)
        for (auto [a, t] : lts.succ[s]) pred[t].push_back({a, s});
    std::vector<bool> out(n, false);

    if (l.is_finite_backend()) {
        for (const auto& w : l.words()) {
            std::vector<bool> cur = target;
            for (auto it = w.rbegin(); it != w.rend(); ++it) {
                std::vector<bool> prev(n, false);
                for (int t = 0; t < n; ++t)
                    if (cur[t])
                        for (auto [a, s] : pred[t])
                            if (a == *it) prev[s] = true;
                cur = std::move(prev);
            }
            for (int s = 0; s < n; ++s) out[s] = out[s] || cur[s];
        }
        return out;
    }

    if (const auto* r = std::get_if<RegularLang>(&l.backend())) {
        const Nfa& a = r->nfa;
        std::vector<std::vector<std::pair<Letter, int>>> apred(a.size());
        for (int q = 0; q < a.size(); ++q)
            for (const auto& e : a.edges[q]) apred[e.target].push_back({e.letter, q});
        std::vector<bool> good(static_cast<std::size_t>(a.size()) * n, false);
        std::deque<std::pair<int, int>> work;
        for (int q : a.finals)
            for (int s = 0; s < n; ++s)
                if (target[s]) {
                    good[static_cast<std::size_t>(q) * n + s] = true;
                    work.push_back({q, s});
                }
        while (!work.empty()) {
            auto [q, s] = work.front();
            work.pop_front();
            for (auto [x, p] : apred[q])
                for (auto [y, u] : pred[s]) {
                    if (x != y) continue;
                    auto idx = static_cast<std::size_t>(p) * n + u;
                    if (good[idx]) continue;
                    good[idx] = true;
                    work.push_back({p, u});
                }
        }
        for (int q : a.initial)
            for (int s = 0; s < n; ++s)
                if (good[static_cast<std::size_t>(q) * n + s]) out[s] = true;
        return out;
    }

    Nfa paths;
    for (int s = 0; s < n; ++s) paths.add_state();
    for (int s = 0; s < n; ++s)
        for (auto [a, t] : lts.succ[s]) paths.add_edge(s, a, t);
    Cfg g = cfg_binarize(cfg_trim(l.to_cfg()));
    if (g.productions.empty()) return out;
    for (auto [p, nt, r] : cfg_summary(g, paths))
        if (nt == g.start && target[r]) out[p] = true;
    return out;
}

}  // namespace

std::vector<bool> sat_states(const Lts& lts, const Formula& f) {
    const int n = lts.size();
    switch (f->op) {
        case Op::False: return std::vector<bool>(n, false);
        case Op::True: return std::vector<bool>(n, true);
        case Op::Lit: {
            std::vector<bool> out(n);
            for (int s = 0; s < n; ++s) out[s] = (lts.labels[s].count(f->prop) != 0) != f->negated;
            return out;
        }
        case Op::Or:
        case Op::And: {
            auto l = sat_states(lts, f->left), r = sat_states(lts, f->right);
            for (int s = 0; s < n; ++s) l[s] = f->op == Op::Or ? (l[s] || r[s]) : (l[s] && r[s]);
            return l;
        }
        case Op::EF: return reach_by(lts, *f->lang.lang, sat_states(lts, f->body()));
        case Op::AG: {
            auto body = sat_states(lts, f->body());
            body.flip();
            auto bad = reach_by(lts, *f->lang.lang, body);
            bad.flip();
            return bad;
        }
    }
    return std::vector<bool>(n, false);
}

bool check(const Structure& m, const Formula& f) { return sat_states(m.lts, f)[m.root]; }

namespace {

class Naive {
public:
    Naive(const Lts& lts, std::size_t bound) : lts_(lts), bound_(bound) {}

    std::vector<bool> sat(const Formula& f) {
        const int n = lts_.size();
        std::vector<bool> out(n, false);
        switch (f->op) {
            case Op::False: return out;
            case Op::True: return std::vector<bool>(n, true);
            case Op::Lit:
                for (int s = 0; s < n; ++s) out[s] = (lts_.labels[s].count(f->prop) != 0) != f->negated;
                return out;
            case Op::Or:
            case Op::And: {
                auto l = sat(f->left), r = sat(f->right);
                for (int s = 0; s < n; ++s) out[s] = f->op == Op::Or ? (l[s] || r[s]) : (l[s] && r[s]);
                return out;
            }
            case Op::EF:
            case Op::AG: {
                auto body = sat(f->body());
                const bool ef = f->op == Op::EF;
                if (!ef) body.flip();
                const Language& l = *f->lang.lang;
                std::set<Word> prefixes;
                const bool finite = l.is_finite_backend();
                if (finite)
                    for (const auto& w : l.words())
                        for (std::size_t i = 0; i <= w.size(); ++i) prefixes.insert(w.substr(0, i));
                const bool words_fit = finite && l.longest_word() <= bound_;
                for (int s = 0; s < n; ++s) {
                    bool truncated = false;
                    Word w;
                    bool found = search(s, w, l, finite ? &prefixes : nullptr, body, truncated);
                    if (!found && truncated && !words_fit)
                        throw BoundInsufficient("path bound " + std::to_string(bound_) + " insufficient for " +
                                                f->key + " at state " + lts_.names[s]);
                    out[s] = ef ? found : !found;
                }
                return out;
            }
        }
        return out;
    }

private:
    bool search(int s, Word& w, const Language& l, const std::set<Word>* prefixes, const std::vector<bool>& target,
                bool& truncated) {
        if (target[s] && l.member(w)) return true;
        if (w.size() == bound_) {
            if (!lts_.succ[s].empty()) truncated = true;
            return false;
        }
        for (auto [a, t] : lts_.succ[s]) {
            w.push_back(a);
            bool viable = !prefixes || prefixes->count(w);
            bool hit = viable && search(t, w, l, prefixes, target, truncated);
            w.pop_back();
            if (hit) return true;
        }
        return false;
    }

    const Lts& lts_;
    std::size_t bound_;
};

void accumulate(const Formula& f, std::size_t& depth, std::size_t& modal, bool& exact) {
    switch (f->op) {
        case Op::Or:
        case Op::And: {
            std::size_t l = 0, r = 0;
            accumulate(f->left, l, modal, exact);
            accumulate(f->right, r, modal, exact);
            depth = std::max(l, r);
            return;
        }
        case Op::EF:
        case Op::AG: {
            ++modal;
            std::size_t body = 0;
            accumulate(f->body(), body, modal, exact);
            const Language& l = *f->lang.lang;
            std::size_t own = 0;
            if (l.is_finite_backend()) {
                own = l.longest_word();
            } else {
                exact = false;
                if (auto w = l.shortest_word()) own = w->size();
            }
            depth = own + body;
            return;
        }
        default: depth = 0; return;
    }
}

bool all_finite(const Formula& f) {
    for (const auto& l : languages(f))
        if (!l->is_finite_backend()) return false;
    return true;
}

}  // namespace

bool naive_check(const Structure& m, const Formula& f, std::size_t bound) {
    return Naive(m.lts, bound).sat(f)[m.root];
}

DerivedBounds derived_bounds(const Formula& f) {
    DerivedBounds b;
    std::size_t modal = 0;
    b.exact = true;
    accumulate(f, b.depth, modal, b.exact);
    b.branching = modal + 1;
    return b;
}

Verdict3 validity(const Formula& f, const LetterSet& letters, SearchBounds bounds, int jobs) {
    const std::string where = "depth " + std::to_string(bounds.depth) + ", branching " + std::to_string(bounds.branching);
    TypeSearchResult r;
    try {
        r = find_countermodel(f, letters, bounds, jobs);
    } catch (const CapExceeded& e) {
        return Verdict3::unknown(std::string("search cap reached: ") + e.what());
    }
    if (r.countermodel) {
        Structure m = tree_structure(*r.countermodel, r.props);
        if (check(m, f)) throw Error("internal: countermodel does not falsify " + f->key);
        return Verdict3::refuted(std::move(m), "countermodel within " + where);
    }
    DerivedBounds d = derived_bounds(f);
    if (d.exact && bounds.depth >= d.depth && bounds.branching >= d.branching)
        return Verdict3::valid("exhaustive at " + where + " (derived depth " + std::to_string(d.depth) +
                               ", branching " + std::to_string(d.branching) + ")");
    return Verdict3::unknown("no countermodel within " + where);
}

Verdict3 validity_derived(const Formula& f, const LetterSet& letters, SearchBounds floor, int jobs) {
    DerivedBounds d = derived_bounds(f);
    return validity(f, letters, {std::max(d.depth, floor.depth), std::max(d.branching, floor.branching)}, jobs);
}

Formula equivalence_formula(const Formula& f, const Formula& g) {
    return f_and(f_implies(f, g), f_implies(g, f));
}

Verdict3 equivalent_bounded(const Formula& f, const Formula& g, const LetterSet& letters, SearchBounds bounds,
                            int jobs) {
    return validity(equivalence_formula(f, g), letters, bounds, jobs);
}

Verdict3 equivalent_derived(const Formula& f, const Formula& g, const LetterSet& letters, int jobs) {
    return validity_derived(equivalence_formula(f, g), letters, {0, 1}, jobs);
}

MonotoneReport structurally_monotone_bounded(const Formula& f, const LetterSet& letters, SearchBounds bounds) {
    auto ps = props(f);
    std::vector<std::string> pv(ps.begin(), ps.end());
    const std::uint32_t nlabels = 1u << pv.size();
    MonotoneReport rep;
    std::vector<TreePtr> trees;
    try {
        trees = enum_trees(letters, bounds.depth, bounds.branching, pv.size());
    } catch (const CapExceeded& e) {
        rep.verdict = Verdict3::unknown(std::string("search cap reached: ") + e.what());
        return rep;
    }
    for (const auto& t : trees) {
        Structure m = tree_structure(t, pv);
        if (!check(m, f)) continue;
        const int n = m.lts.size();
        for (int s = 0; s < n; ++s)
            for (Letter a : letters) {
                std::vector<Structure> candidates;
                for (std::uint32_t l = 0; l < nlabels; ++l) {
                    Structure e = m;
                    std::set<std::string> label;
                    for (std::size_t i = 0; i < pv.size(); ++i)
                        if (l >> i & 1u) label.insert(pv[i]);
                    int leaf = e.lts.add_state("n" + std::to_string(n), label);
                    e.lts.add_edge(s, a, leaf);
                    candidates.push_back(std::move(e));
                }
                for (int t2 = 0; t2 < n; ++t2) {
                    Structure e = m;
                    e.lts.add_edge(s, a, t2);
                    candidates.push_back(std::move(e));
                }
                for (auto& e : candidates)
                    if (!check(e, f)) {
                        rep.verdict = Verdict3::refuted(e, "extension of a model falsifies the formula");
                        rep.model = m;
                        rep.extension = std::move(e);
                        return rep;
                    }
            }
    }
    const std::string where = "depth " + std::to_string(bounds.depth) + ", branching " + std::to_string(bounds.branching);
    rep.verdict = all_finite(f) ? Verdict3::valid("no refuting extension within " + where)
                                : Verdict3::unknown("no refuting extension within " + where);
    return rep;
}

WedgeReport elim_wedge_ef(const Formula& delta, const std::vector<Formula>& terms, const Formula& target,
                          const LetterSet& letters, SearchBounds bounds, int jobs) {
    WedgeReport rep;
    if (terms.empty()) {
        if (!equivalent_bounded(target, delta, letters, bounds, jobs).is_valid())
            throw Error("no EF-terms and the target is not equivalent to delta");
        return rep;
    }
    Verdict3 hyp = equivalent_bounded(target, f_or(delta, f_and_all(terms)), letters, bounds, jobs);
    if (hyp.is_refuted()) {
        rep.hypothesis = std::move(hyp);
        return rep;
    }
    for (std::size_t i = 0; i < terms.size(); ++i) {
        rep.per_term.push_back(equivalent_bounded(target, f_or(delta, terms[i]), letters, bounds, jobs));
        if (rep.per_term.back().is_valid()) {
            rep.index = i;
            break;
        }
    }
    return rep;
}

}  // namespace pdlsep
