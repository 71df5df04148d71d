#include "pdlsep/type_search.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pdlsep {

namespace {

// A modal subformula together with an automaton for its language that is
// exact on words no longer than the depth bound.
struct Modal {
    const Node* node;
    Dfa dfa;
    std::vector<std::vector<int>> next;  // [state][letter index], -1 blocks
    std::size_t base = 0;                // first fact index
};

Dfa bounded_dfa(const Language& l, const LetterSet& letters, std::size_t depth) {
    if (l.is_finite_backend()) return determinize(nfa_from_words(l.words()), letters);
    if (const auto* r = std::get_if<RegularLang>(&l.backend())) return determinize(r->nfa, letters);
    return determinize(nfa_from_words(l.enumerate(depth)), letters);
}

class Search {
public:
    Search(const Formula& f, const LetterSet& letters, SearchBounds bounds, int jobs)
        : f_(f), letters_(letters.begin(), letters.end()), bounds_(bounds), jobs_(jobs) {
        auto ps = props(f);
        props_.assign(ps.begin(), ps.end());
        if (props_.size() > 12) throw CapExceeded("too many propositions for the type search");
        collect(f.get());
        for (auto& m : mods_) {
            m.base = facts_;
            facts_ += static_cast<std::size_t>(m.dfa.size());
            m.next.assign(m.dfa.size(), std::vector<int>(letters_.size(), -1));
            for (int r = 0; r < m.dfa.size(); ++r)
                for (std::size_t i = 0; i < letters_.size(); ++i)
                    if (auto t = m.dfa.next(r, letters_[i])) m.next[r][i] = *t;
        }
    }

    TypeSearchResult run() {
        TypeSearchResult res;
        res.props = props_;
        const std::uint32_t nlabels = 1u << props_.size();
        for (std::uint32_t l = 0; l < nlabels; ++l) intern(l, std::string(facts_, 0), {});
        res.levels = 0;
        if (auto bad = refuted(0)) {
            res.countermodel = build(*bad);
            res.types = types_.size();
            return res;
        }
        for (std::size_t k = 1; k <= bounds_.depth; ++k) {
            const std::size_t before = types_.size();
            auto unions = closure(before);
            for (const auto& [u, kids] : unions)
                for (std::uint32_t l = 0; l < nlabels; ++l) intern(l, u, kids);
            res.levels = k;
            if (auto bad = refuted(before)) {
                res.countermodel = build(*bad);
                break;
            }
            if (types_.size() == before) {
                res.saturated = true;
                break;
            }
        }
        res.types = types_.size();
        return res;
    }

private:
    struct Type {
        std::uint32_t label;
        std::string facts;
        std::vector<std::pair<Letter, int>> kids;
    };

    int collect(const Node* n) {
        switch (n->op) {
            case Op::Or:
            case Op::And:
                collect(n->left.get());
                collect(n->right.get());
                return -1;
            case Op::EF:
            case Op::AG: {
                if (auto it = index_.find(n); it != index_.end()) return it->second;
                collect(n->body().get());
                mods_.push_back({n, bounded_dfa(*n->lang.lang, LetterSet(letters_.begin(), letters_.end()),
                                                      bounds_.depth),
                                 {}, 0});
                index_[n] = static_cast<int>(mods_.size()) - 1;
                return index_[n];
            }
            default: return -1;
        }
    }

    bool holds(const Node* n, std::uint32_t label, const std::string& facts) const {
        switch (n->op) {
            case Op::False: return false;
            case Op::True: return true;
            case Op::Lit: {
                auto i = std::lower_bound(props_.begin(), props_.end(), n->prop) - props_.begin();
                return ((label >> i) & 1u) != n->negated;
            }
            case Op::Or: return holds(n->left.get(), label, facts) || holds(n->right.get(), label, facts);
            case Op::And: return holds(n->left.get(), label, facts) && holds(n->right.get(), label, facts);
            case Op::EF:
            case Op::AG: {
                const Modal& m = mods_[index_.at(n)];
                bool reach = facts[m.base + static_cast<std::size_t>(m.dfa.initial)];
                return n->op == Op::EF ? reach : !reach;
            }
        }
        return false;
    }

    // Fact (m, r): some path whose label leads the automaton of m from r to
    // acceptance ends in a node satisfying the body (EF) or falsifying it (AG).
    std::string facts_of(std::uint32_t label, const std::string& u) const {
        std::string facts(facts_, 0);
        for (const auto& m : mods_) {
            bool body = holds(m.node->body().get(), label, facts);
            bool target = m.node->op == Op::EF ? body : !body;
            for (int r = 0; r < m.dfa.size(); ++r) {
                std::size_t i = m.base + static_cast<std::size_t>(r);
                facts[i] = (target && m.dfa.final[r]) || u[i];
            }
        }
        return facts;
    }

    std::string contrib(std::size_t letter, const std::string& child) const {
        std::string c(facts_, 0);
        for (const auto& m : mods_)
            for (int r = 0; r < m.dfa.size(); ++r) {
                int t = m.next[r][letter];
                if (t >= 0 && child[m.base + static_cast<std::size_t>(t)]) c[m.base + static_cast<std::size_t>(r)] = 1;
            }
        return c;
    }

    void intern(std::uint32_t label, const std::string& u, const std::vector<std::pair<Letter, int>>& kids) {
        std::string facts = facts_of(label, u);
        std::string key = std::to_string(label) + ":" + facts;
        if (by_key_.count(key)) return;
        by_key_[key] = static_cast<int>(types_.size());
        types_.push_back({label, std::move(facts), kids});
    }

    // Unions of at most `branching` child contributions drawn from the types
    // known so far, each with one way to build it.
    std::vector<std::pair<std::string, std::vector<std::pair<Letter, int>>>> closure(std::size_t known) {
        std::vector<std::pair<std::string, std::pair<Letter, int>>> contribs;
        {
            std::map<std::string, std::pair<Letter, int>> first;
            for (std::size_t t = 0; t < known; ++t)
                for (std::size_t a = 0; a < letters_.size(); ++a) {
                    std::string c = contrib(a, types_[t].facts);
                    first.emplace(std::move(c), std::make_pair(letters_[a], static_cast<int>(t)));
                }
            for (auto& [c, who] : first) contribs.push_back({c, who});
        }
        using Entry = std::pair<std::string, std::vector<std::pair<Letter, int>>>;
        std::vector<Entry> all{{std::string(facts_, 0), {}}};
        std::unordered_map<std::string, std::size_t> where{{all[0].first, 0}};
        std::vector<std::size_t> frontier{0};
        for (std::size_t j = 0; j < bounds_.branching && !frontier.empty(); ++j) {
            std::vector<std::vector<Entry>> found(frontier.size());
#pragma omp parallel for schedule(dynamic) num_threads(jobs_) if (jobs_ > 1)
            for (std::size_t i = 0; i < frontier.size(); ++i) {
                const Entry& base = all[frontier[i]];
                for (const auto& [c, who] : contribs) {
                    std::string u = base.first;
                    bool grew = false;
                    for (std::size_t x = 0; x < facts_; ++x)
                        if (c[x] && !u[x]) u[x] = 1, grew = true;
                    if (!grew) continue;
                    auto kids = base.second;
                    kids.push_back(who);
                    found[i].push_back({std::move(u), std::move(kids)});
                }
            }
            std::vector<std::size_t> next;
            for (auto& batch : found)
                for (auto& e : batch) {
                    if (where.count(e.first)) continue;
                    where[e.first] = all.size();
                    next.push_back(all.size());
                    all.push_back(std::move(e));
                }
            if (all.size() > kUnionCap) throw CapExceeded("type search exceeds " + std::to_string(kUnionCap) + " unions");
            frontier = std::move(next);
        }
        return all;
    }

    std::optional<int> refuted(std::size_t from) const {
        for (std::size_t t = from; t < types_.size(); ++t)
            if (!holds(f_.get(), types_[t].label, types_[t].facts)) return static_cast<int>(t);
        return std::nullopt;
    }

    TreePtr build(int t) const {
        std::vector<std::pair<Letter, TreePtr>> kids;
        for (auto [a, c] : types_[t].kids) kids.push_back({a, build(c)});
        return make_tree(types_[t].label, std::move(kids));
    }

    static constexpr std::size_t kUnionCap = 4'000'000;

    Formula f_;
    std::vector<Letter> letters_;
    SearchBounds bounds_;
    int jobs_;
    std::vector<std::string> props_;
    std::vector<Modal> mods_;
    std::map<const Node*, int> index_;
    std::size_t facts_ = 0;
    std::vector<Type> types_;
    std::unordered_map<std::string, int> by_key_;
};

}  // namespace

TypeSearchResult find_countermodel(const Formula& f, const LetterSet& letters, SearchBounds bounds, int jobs) {
    return Search(f, letters, bounds, std::max(1, jobs)).run();
}

}  // namespace pdlsep
