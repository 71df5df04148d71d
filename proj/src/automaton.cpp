#include "pdlsep/automaton.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <functional>

namespace pdlsep {

std::set<int> Nfa::step(const std::set<int>& from, Letter a) const {
    std::set<int> out;
    for (int s : from)
        for (const auto& e : edges[s])
            if (e.letter == a) out.insert(e.target);
    return out;
}

bool Nfa::accepts(std::string_view w) const {
    std::set<int> cur = initial;
    for (Letter a : w) {
        cur = step(cur, a);
        if (cur.empty()) return false;
    }
    return std::any_of(cur.begin(), cur.end(), [&](int s) { return finals.count(s) != 0; });
}

LetterSet Nfa::letters() const {
    LetterSet out;
    for (const auto& es : edges)
        for (const auto& e : es) out.insert(e.letter);
    return out;
}

bool Dfa::accepts(std::string_view w) const {
    int s = initial;
    for (Letter a : w) {
        auto n = next(s, a);
        if (!n) return false;
        s = *n;
    }
    return final[s];
}

Nfa Dfa::to_nfa() const {
    Nfa n;
    n.edges.resize(delta.size());
    for (int s = 0; s < size(); ++s) {
        for (auto [a, t] : delta[s]) n.add_edge(s, a, t);
        if (final[s]) n.finals.insert(s);
    }
    n.initial = {initial};
    return n;
}

// ---------------------------------------------------------------------------
// Regular expressions: Thompson construction over an ε-NFA, then ε-removal.

namespace {

struct EpsNfa {
    std::vector<std::vector<std::pair<std::optional<Letter>, int>>> edges;
    int add() {
        edges.emplace_back();
        return static_cast<int>(edges.size()) - 1;
    }
    void link(int a, std::optional<Letter> l, int b) { edges[a].push_back({l, b}); }
};

struct Fragment {
    int start;
    int end;
};

class RegexParser {
public:
    RegexParser(std::string_view src, EpsNfa& out) : src_(src), nfa_(out) {}

    Fragment parse() {
        Fragment f = alternation();
        skip_ws();
        if (pos_ != src_.size()) throw ParseError("unexpected '" + std::string(1, src_[pos_]) + "' in regex", pos_);
        return f;
    }

private:
    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip_ws();
        return pos_ < src_.size() && src_[pos_] == c;
    }

    Fragment epsilon() {
        int s = nfa_.add(), e = nfa_.add();
        nfa_.link(s, std::nullopt, e);
        return {s, e};
    }

    Fragment alternation() {
        Fragment left = concatenation();
        while (peek('|')) {
            ++pos_;
            Fragment right = concatenation();
            int s = nfa_.add(), e = nfa_.add();
            nfa_.link(s, std::nullopt, left.start);
            nfa_.link(s, std::nullopt, right.start);
            nfa_.link(left.end, std::nullopt, e);
            nfa_.link(right.end, std::nullopt, e);
            left = {s, e};
        }
        return left;
    }

    Fragment concatenation() {
        std::optional<Fragment> acc;
        while (true) {
            skip_ws();
            if (pos_ >= src_.size() || src_[pos_] == '|' || src_[pos_] == ')') break;
            Fragment f = postfix();
            if (acc) {
                nfa_.link(acc->end, std::nullopt, f.start);
                acc->end = f.end;
            } else {
                acc = f;
            }
        }
        return acc ? *acc : epsilon();
    }

    Fragment postfix() {
        Fragment f = atom();
        while (true) {
            skip_ws();
            if (pos_ >= src_.size()) break;
            char c = src_[pos_];
            if (c != '*' && c != '+' && c != '?') break;
            ++pos_;
            int s = nfa_.add(), e = nfa_.add();
            nfa_.link(s, std::nullopt, f.start);
            nfa_.link(f.end, std::nullopt, e);
            if (c != '+') nfa_.link(s, std::nullopt, e);
            if (c != '?') nfa_.link(f.end, std::nullopt, f.start);
            f = {s, e};
        }
        return f;
    }

    Fragment atom() {
        skip_ws();
        char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            Fragment f = alternation();
            if (!peek(')')) throw ParseError("missing ')' in regex", pos_);
            ++pos_;
            return f;
        }
        if (c == '[') {
            std::size_t open = pos_++;
            int s = nfa_.add(), e = nfa_.add();
            bool any = false;
            while (pos_ < src_.size() && src_[pos_] != ']') {
                if (!std::isspace(static_cast<unsigned char>(src_[pos_]))) {
                    nfa_.link(s, src_[pos_], e);
                    any = true;
                }
                ++pos_;
            }
            if (pos_ >= src_.size()) throw ParseError("missing ']' in regex", open);
            ++pos_;
            if (!any) throw ParseError("empty character class", open);
            return {s, e};
        }
        if (c == '*' || c == '+' || c == '?' || c == ')' || c == '|')
            throw ParseError("unexpected '" + std::string(1, c) + "' in regex", pos_);
        ++pos_;
        if (c == '_') return epsilon();
        int s = nfa_.add(), e = nfa_.add();
        nfa_.link(s, c, e);
        return {s, e};
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    EpsNfa& nfa_;
};

std::set<int> eps_closure(const EpsNfa& n, int s) {
    std::set<int> seen{s};
    std::vector<int> stack{s};
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (const auto& [l, v] : n.edges[u])
            if (!l && seen.insert(v).second) stack.push_back(v);
    }
    return seen;
}

}  // namespace

Nfa nfa_from_regex(std::string_view regex) {
    EpsNfa e;
    Fragment f = RegexParser(regex, e).parse();
    Nfa out;
    out.edges.resize(e.edges.size());
    for (int s = 0; s < static_cast<int>(e.edges.size()); ++s) {
        auto cl = eps_closure(e, s);
        for (int u : cl) {
            if (u == f.end) out.finals.insert(s);
            for (const auto& [l, v] : e.edges[u])
                if (l) out.add_edge(s, *l, v);
        }
    }
    out.initial = {f.start};
    return trim(out);
}

Nfa nfa_from_words(const std::set<Word>& words) {
    Nfa n;
    int root = n.add_state();
    n.initial = {root};
    std::map<std::pair<int, Letter>, int> trie;
    for (const auto& w : words) {
        int s = root;
        for (Letter a : w) {
            auto [it, fresh] = trie.try_emplace({s, a}, 0);
            if (fresh) {
                it->second = n.add_state();
                n.add_edge(s, a, it->second);
            }
            s = it->second;
        }
        n.finals.insert(s);
    }
    return n;
}

Nfa nfa_universal(const LetterSet& letters) {
    Nfa n;
    int s = n.add_state();
    for (Letter a : letters) n.add_edge(s, a, s);
    n.initial = {s};
    n.finals = {s};
    return n;
}

Nfa nfa_nonempty(const LetterSet& letters) {
    Nfa n;
    int s = n.add_state(), t = n.add_state();
    for (Letter a : letters) {
        n.add_edge(s, a, t);
        n.add_edge(t, a, t);
    }
    n.initial = {s};
    n.finals = {t};
    return n;
}

Nfa nfa_words_then_dollar(const LetterSet& letters) {
    Nfa n;
    int s = n.add_state(), t = n.add_state();
    for (Letter a : letters)
        if (a != kDollar) n.add_edge(s, a, s);
    n.add_edge(s, kDollar, t);
    n.initial = {s};
    n.finals = {t};
    return n;
}

Dfa determinize(const Nfa& nfa, const LetterSet& letters) {
    Dfa d;
    std::map<std::set<int>, int> ids;
    std::deque<std::set<int>> work;
    auto intern = [&](const std::set<int>& s) {
        auto [it, fresh] = ids.try_emplace(s, d.size());
        if (fresh) {
            d.delta.emplace_back();
            d.final.push_back(std::any_of(s.begin(), s.end(), [&](int q) { return nfa.finals.count(q) != 0; }));
            work.push_back(s);
        }
        return it->second;
    };
    d.initial = intern(nfa.initial);
    while (!work.empty()) {
        std::set<int> s = work.front();
        work.pop_front();
        int id = ids.at(s);
        for (Letter a : letters) {
            auto t = nfa.step(s, a);
            if (t.empty()) continue;
            int tid = intern(t);
            d.delta[id][a] = tid;
        }
    }
    return d;
}

Dfa dfa_all_but(const LetterSet& letters, const Word& w) {
    // States 0..|w| track the matched prefix of w; state |w|+1 is the sink.
    Dfa d;
    int n = static_cast<int>(w.size());
    d.delta.resize(n + 2);
    d.final.assign(n + 2, true);
    d.final[n] = false;
    for (int i = 0; i <= n + 1; ++i)
        for (Letter a : letters) d.delta[i][a] = (i < n && w[i] == a) ? i + 1 : n + 1;
    d.initial = 0;
    return d;
}

Nfa product(const Nfa& a, const Nfa& b) {
    Nfa out;
    std::map<std::pair<int, int>, int> ids;
    std::deque<std::pair<int, int>> work;
    auto intern = [&](int x, int y) {
        auto [it, fresh] = ids.try_emplace({x, y}, 0);
        if (fresh) {
            it->second = out.add_state();
            if (a.finals.count(x) && b.finals.count(y)) out.finals.insert(it->second);
            work.push_back({x, y});
        }
        return it->second;
    };
    for (int x : a.initial)
        for (int y : b.initial) out.initial.insert(intern(x, y));
    while (!work.empty()) {
        auto [x, y] = work.front();
        work.pop_front();
        int id = ids.at({x, y});
        for (const auto& ea : a.edges[x])
            for (const auto& eb : b.edges[y])
                if (ea.letter == eb.letter) out.add_edge(id, ea.letter, intern(ea.target, eb.target));
    }
    return out;
}

namespace {

std::vector<bool> reachable(const Nfa& n) {
    std::vector<bool> seen(n.size(), false);
    std::vector<int> stack(n.initial.begin(), n.initial.end());
    for (int s : stack) seen[s] = true;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (const auto& e : n.edges[u])
            if (!seen[e.target]) {
                seen[e.target] = true;
                stack.push_back(e.target);
            }
    }
    return seen;
}

std::vector<bool> coreachable(const Nfa& n) {
    std::vector<std::vector<int>> rev(n.size());
    for (int s = 0; s < n.size(); ++s)
        for (const auto& e : n.edges[s]) rev[e.target].push_back(s);
    std::vector<bool> seen(n.size(), false);
    std::vector<int> stack(n.finals.begin(), n.finals.end());
    for (int s : stack) seen[s] = true;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v : rev[u])
            if (!seen[v]) {
                seen[v] = true;
                stack.push_back(v);
            }
    }
    return seen;
}

}  // namespace

Nfa trim(const Nfa& nfa) {
    auto fw = reachable(nfa);
    auto bw = coreachable(nfa);
    std::vector<int> remap(nfa.size(), -1);
    Nfa out;
    for (int s = 0; s < nfa.size(); ++s)
        if (fw[s] && bw[s]) remap[s] = out.add_state();
    for (int s = 0; s < nfa.size(); ++s) {
        if (remap[s] < 0) continue;
        for (const auto& e : nfa.edges[s])
            if (remap[e.target] >= 0) out.add_edge(remap[s], e.letter, remap[e.target]);
        if (nfa.initial.count(s)) out.initial.insert(remap[s]);
        if (nfa.finals.count(s)) out.finals.insert(remap[s]);
    }
    for (auto& es : out.edges) {
        std::sort(es.begin(), es.end());
        es.erase(std::unique(es.begin(), es.end()), es.end());
    }
    return out;
}

bool is_empty(const Nfa& nfa) { return !shortest_word(nfa).has_value(); }

std::optional<Word> shortest_word(const Nfa& nfa) {
    std::vector<int> parent(nfa.size(), -2);
    std::vector<Letter> via(nfa.size(), 0);
    std::deque<int> work;
    for (int s : nfa.initial) {
        parent[s] = -1;
        work.push_back(s);
    }
    while (!work.empty()) {
        int u = work.front();
        work.pop_front();
        if (nfa.finals.count(u)) {
            Word w;
            for (int s = u; parent[s] >= 0; s = parent[s]) w.push_back(via[s]);
            return reversed(w);
        }
        // Letter order makes the result shortlex-least among equal lengths
        // only per BFS layer; callers need some shortest word, not the least.
        for (const auto& e : nfa.edges[u])
            if (parent[e.target] == -2) {
                parent[e.target] = u;
                via[e.target] = e.letter;
                work.push_back(e.target);
            }
    }
    return std::nullopt;
}

Nfa nfa_remove_epsilon(const Nfa& nfa) {
    Nfa out = nfa;
    int fresh = out.add_state();
    for (int s : nfa.initial)
        for (const auto& e : nfa.edges[s]) out.add_edge(fresh, e.letter, e.target);
    out.initial = {fresh};
    return trim(out);
}

Nfa nfa_left_quotient(const Nfa& nfa, Letter a) {
    Nfa out = nfa;
    out.initial = nfa.step(nfa.initial, a);
    return trim(out);
}

Nfa nfa_right_quotient(const Nfa& nfa, Letter a) {
    Nfa out = nfa;
    out.finals.clear();
    for (int s = 0; s < nfa.size(); ++s)
        for (const auto& e : nfa.edges[s])
            if (e.letter == a && nfa.finals.count(e.target)) out.finals.insert(s);
    return trim(out);
}

Nfa nfa_prefix_closure(const Nfa& nfa) {
    Nfa out = trim(nfa);
    for (int s = 0; s < out.size(); ++s) out.finals.insert(s);
    return out;
}

Nfa nfa_prepend(const Nfa& nfa, const Word& prefix) {
    if (prefix.empty()) return nfa;
    Nfa out = nfa;
    int cur = out.add_state();
    std::set<int> start{cur};
    for (std::size_t i = 0; i + 1 < prefix.size(); ++i) {
        int next = out.add_state();
        out.add_edge(cur, prefix[i], next);
        cur = next;
    }
    for (int s : nfa.initial) out.add_edge(cur, prefix.back(), s);
    out.initial = start;
    return trim(out);
}

std::set<Word> nfa_enumerate(const Nfa& nfa, std::size_t max_len) {
    Nfa t = trim(nfa);
    std::set<Word> out;
    std::function<void(const std::set<int>&, Word&)> go = [&](const std::set<int>& cur, Word& w) {
        if (std::any_of(cur.begin(), cur.end(), [&](int s) { return t.finals.count(s) != 0; })) out.insert(w);
        if (w.size() == max_len) return;
        for (Letter a : t.letters()) {
            auto next = t.step(cur, a);
            if (next.empty()) continue;
            w.push_back(a);
            go(next, w);
            w.pop_back();
        }
    };
    Word w;
    if (!t.initial.empty()) go(t.initial, w);
    return out;
}

}  // namespace pdlsep
