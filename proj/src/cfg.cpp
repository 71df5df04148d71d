#include "pdlsep/cfg.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace pdlsep {

int Cfg::nonterminal(const std::string& name) {
    auto [it, fresh] = index_.try_emplace(name, size());
    if (fresh) names.push_back(name);
    return it->second;
}

std::optional<int> Cfg::find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

LetterSet Cfg::terminals() const {
    LetterSet out;
    for (const auto& p : productions)
        for (const auto& s : p.body)
            if (s.terminal) out.insert(s.letter());
    return out;
}

std::string Cfg::str() const {
    std::ostringstream os;
    for (int a = 0; a < size(); ++a) {
        bool first = true;
        for (const auto& p : productions) {
            if (p.head != a) continue;
            os << (first ? names[a] + " -> " : std::string(" | "));
            first = false;
            if (p.body.empty()) os << kEpsilonToken;
            for (std::size_t i = 0; i < p.body.size(); ++i) {
                if (i) os << ' ';
                os << (p.body[i].terminal ? std::string(1, p.body[i].letter()) : names[p.body[i].id]);
            }
        }
        if (!first) os << '\n';
    }
    return os.str();
}

namespace {

std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> out;
    std::istringstream is{std::string(s)};
    for (std::string t; is >> t;) out.push_back(t);
    return out;
}

}  // namespace

Cfg parse_cfg(std::string_view text) {
    struct Raw {
        std::string head;
        std::vector<std::vector<std::string>> alts;
        std::size_t line;
    };
    std::vector<Raw> raws;
    std::set<std::string> heads;
    std::istringstream is{std::string(text)};
    std::size_t lineno = 0;
    for (std::string line; std::getline(is, line);) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto arrow = line.find("->");
        if (arrow == std::string::npos) throw ParseError("expected '->' in grammar", lineno);
        auto head = split_ws(line.substr(0, arrow));
        if (head.size() != 1) throw ParseError("expected a single head symbol", lineno);
        Raw r{head[0], {}, lineno};
        std::string rhs = line.substr(arrow + 2);
        std::size_t from = 0;
        while (true) {
            auto bar = rhs.find('|', from);
            r.alts.push_back(split_ws(rhs.substr(from, bar == std::string::npos ? std::string::npos : bar - from)));
            if (bar == std::string::npos) break;
            from = bar + 1;
        }
        heads.insert(r.head);
        raws.push_back(std::move(r));
    }
    if (raws.empty()) throw ParseError("grammar has no productions", 0);
    Cfg g;
    g.start = g.nonterminal(raws.front().head);
    for (const auto& r : raws) {
        int h = g.nonterminal(r.head);
        for (const auto& alt : r.alts) {
            std::vector<Symbol> body;
            if (alt.empty()) throw ParseError("empty alternative; write '_' for ε", r.line);
            if (!(alt.size() == 1 && alt[0] == kEpsilonToken)) {
                for (const auto& tok : alt) {
                    if (heads.count(tok)) body.push_back(Symbol::n(g.nonterminal(tok)));
                    else if (tok.size() == 1 && tok != kEpsilonToken) body.push_back(Symbol::t(tok[0]));
                    else throw ParseError("unknown symbol '" + tok + "'", r.line);
                }
            }
            g.add(h, std::move(body));
        }
    }
    return g;
}

std::vector<bool> nullable(const Cfg& g) {
    std::vector<bool> out(g.size(), false);
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& p : g.productions) {
            if (out[p.head]) continue;
            if (std::all_of(p.body.begin(), p.body.end(), [&](Symbol s) { return !s.terminal && out[s.id]; })) {
                out[p.head] = true;
                changed = true;
            }
        }
    }
    return out;
}

std::vector<bool> productive(const Cfg& g) {
    std::vector<bool> out(g.size(), false);
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& p : g.productions) {
            if (out[p.head]) continue;
            if (std::all_of(p.body.begin(), p.body.end(), [&](Symbol s) { return s.terminal || out[s.id]; })) {
                out[p.head] = true;
                changed = true;
            }
        }
    }
    return out;
}

Cfg cfg_trim(const Cfg& g) {
    auto prod = productive(g);
    std::vector<std::vector<const Production*>> by_head(g.size());
    for (const auto& p : g.productions) {
        bool ok = prod[p.head] &&
                  std::all_of(p.body.begin(), p.body.end(), [&](Symbol s) { return s.terminal || prod[s.id]; });
        if (ok) by_head[p.head].push_back(&p);
    }
    std::vector<bool> reach(g.size(), false);
    std::vector<int> stack{g.start};
    reach[g.start] = true;
    while (!stack.empty()) {
        int a = stack.back();
        stack.pop_back();
        for (const auto* p : by_head[a])
            for (auto s : p->body)
                if (!s.terminal && !reach[s.id]) {
                    reach[s.id] = true;
                    stack.push_back(s.id);
                }
    }
    Cfg out;
    out.start = out.nonterminal(g.names[g.start]);
    for (int a = 0; a < g.size(); ++a)
        if (reach[a]) out.nonterminal(g.names[a]);
    for (int a = 0; a < g.size(); ++a) {
        if (!reach[a]) continue;
        for (const auto* p : by_head[a]) {
            std::vector<Symbol> body;
            for (auto s : p->body) body.push_back(s.terminal ? s : Symbol::n(*out.find(g.names[s.id])));
            out.add(*out.find(g.names[a]), std::move(body));
        }
    }
    std::sort(out.productions.begin(), out.productions.end());
    out.productions.erase(std::unique(out.productions.begin(), out.productions.end()), out.productions.end());
    return out;
}

Cfg cfg_binarize(const Cfg& g) {
    Cfg out = g;
    out.productions.clear();
    int fresh = 0;
    for (const auto& p : g.productions) {
        if (p.body.size() <= 2) {
            out.productions.push_back(p);
            continue;
        }
        // A -> X1 X2 ... Xn  becomes  A -> X1 T1, T1 -> X2 T2, ..., T_{n-2} -> X_{n-1} Xn
        int head = p.head;
        for (std::size_t i = 0; i + 2 < p.body.size(); ++i) {
            std::string name;
            do name = "<bin" + std::to_string(fresh++) + ">";
            while (out.find(name));
            int t = out.nonterminal(name);
            out.add(head, {p.body[i], Symbol::n(t)});
            head = t;
        }
        out.add(head, {p.body[p.body.size() - 2], p.body.back()});
    }
    return out;
}

bool cfg_member(const Cfg& grammar, std::string_view w) {
    Cfg g = cfg_binarize(grammar);
    const int n = static_cast<int>(w.size());
    const auto null = nullable(g);
    // table[i][j][A]: A derives w[i..j).
    std::vector<std::vector<std::vector<bool>>> table(
        n + 1, std::vector<std::vector<bool>>(n + 1, std::vector<bool>(g.size(), false)));
    auto derives = [&](Symbol s, int i, int j) {
        if (s.terminal) return j == i + 1 && w[i] == s.letter();
        return static_cast<bool>(table[i][j][s.id]);
    };
    for (int len = 0; len <= n; ++len) {
        for (int i = 0; i + len <= n; ++i) {
            int j = i + len;
            auto& cell = table[i][j];
            if (len == 0) {
                for (int a = 0; a < g.size(); ++a) cell[a] = null[a];
                continue;
            }
            // Unit and nullable-sibling productions make a cell depend on
            // itself, so iterate to a fixpoint.
            for (bool changed = true; changed;) {
                changed = false;
                for (const auto& p : g.productions) {
                    if (cell[p.head] || p.body.empty()) continue;
                    bool hit = false;
                    if (p.body.size() == 1) {
                        hit = derives(p.body[0], i, j);
                    } else {
                        for (int k = i; k <= j && !hit; ++k) hit = derives(p.body[0], i, k) && derives(p.body[1], k, j);
                    }
                    if (hit) {
                        cell[p.head] = true;
                        changed = true;
                    }
                }
            }
        }
    }
    return table[0][n][g.start];
}

bool cfg_is_empty(const Cfg& g) { return !productive(g)[g.start]; }

std::optional<Word> cfg_shortest_word(const Cfg& g) {
    std::vector<std::optional<Word>> best(g.size());
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& p : g.productions) {
            Word cand;
            bool ok = true;
            for (auto s : p.body) {
                if (s.terminal) {
                    cand.push_back(s.letter());
                } else if (best[s.id]) {
                    cand += *best[s.id];
                } else {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            auto& b = best[p.head];
            if (!b || ShortLex{}(cand, *b)) {
                b = std::move(cand);
                changed = true;
            }
        }
    }
    return best[g.start];
}

std::set<Word> cfg_enumerate(const Cfg& g, const LetterSet& letters, std::size_t max_len) {
    std::set<Word> out;
    Cfg t = cfg_trim(g);
    if (cfg_is_empty(t)) return out;
    for (const auto& w : all_words(letters, max_len))
        if (cfg_member(t, w)) out.insert(w);
    return out;
}

std::set<std::tuple<int, int, int>> cfg_summary(const Cfg& g, const Nfa& nfa) {
    const int q = nfa.size();
    // Saturate the summary relation (p, A, r): A derives some word leading
    // the automaton from p to r.
    using Triple = std::tuple<int, int, int>;
    std::set<Triple> rel;
    std::vector<std::vector<std::pair<int, int>>> from_state(q);  // p -> (A, r)
    std::vector<std::vector<std::pair<int, int>>> to_state(q);    // r -> (A, p)
    std::deque<Triple> work;
    auto add = [&](int p, int a, int r) {
        if (rel.insert({p, a, r}).second) {
            from_state[p].push_back({a, r});
            to_state[r].push_back({a, p});
            work.push_back({p, a, r});
        }
    };
    std::vector<std::vector<const Production*>> uses(g.size());
    for (const auto& p : g.productions)
        for (auto s : p.body)
            if (!s.terminal) uses[s.id].push_back(&p);

    // Targets reachable from p by one symbol, given the current relation.
    auto step = [&](Symbol s, int p) {
        std::vector<int> out;
        if (s.terminal) {
            for (const auto& e : nfa.edges[p])
                if (e.letter == s.letter()) out.push_back(e.target);
        } else {
            for (auto [a, r] : from_state[p])
                if (a == s.id) out.push_back(r);
        }
        return out;
    };
    auto apply = [&](const Production& pr, int p) {
        if (pr.body.empty()) {
            add(p, pr.head, p);
        } else if (pr.body.size() == 1) {
            for (int r : step(pr.body[0], p)) add(p, pr.head, r);
        } else {
            for (int m : step(pr.body[0], p))
                for (int r : step(pr.body[1], m)) add(p, pr.head, r);
        }
    };
    for (int p = 0; p < q; ++p)
        for (const auto& pr : g.productions) {
            bool simple = std::all_of(pr.body.begin(), pr.body.end(), [](Symbol s) { return s.terminal; });
            if (simple) apply(pr, p);
        }
    while (!work.empty()) {
        auto [p, a, r] = work.front();
        work.pop_front();
        for (const auto* pr : uses[a]) {
            // The new fact may be either child of a binary body.
            if (pr->body.size() == 1) {
                add(p, pr->head, r);
                continue;
            }
            if (!pr->body[0].terminal && pr->body[0].id == a)
                for (int t : step(pr->body[1], r)) add(p, pr->head, t);
            if (!pr->body[1].terminal && pr->body[1].id == a) {
                // Need x with (x, body0, p).
                if (pr->body[0].terminal) {
                    for (int x = 0; x < q; ++x)
                        for (const auto& e : nfa.edges[x])
                            if (e.letter == pr->body[0].letter() && e.target == p) add(x, pr->head, r);
                } else {
                    for (auto [b, x] : to_state[p])
                        if (b == pr->body[0].id) add(x, pr->head, r);
                }
            }
        }
    }
    return rel;
}

Cfg cfg_intersect(const Cfg& grammar, const Nfa& nfa) {
    Cfg g = cfg_binarize(cfg_trim(grammar));
    const auto rel = cfg_summary(g, nfa);
    const int q = nfa.size();
    Cfg out;
    out.start = out.nonterminal("<start>");
    auto name = [&](int p, int a, int r) {
        return "(" + std::to_string(p) + "," + g.names[a] + "," + std::to_string(r) + ")";
    };
    for (auto [p, a, r] : rel) out.nonterminal(name(p, a, r));
    for (auto [p, a, r] : rel) {
        int head = *out.find(name(p, a, r));
        for (const auto& pr : g.productions) {
            if (pr.head != a) continue;
            auto sym = [&](Symbol s, int x, int y) -> std::optional<Symbol> {
                if (s.terminal) {
                    for (const auto& e : nfa.edges[x])
                        if (e.letter == s.letter() && e.target == y) return s;
                    return std::nullopt;
                }
                if (!rel.count({x, s.id, y})) return std::nullopt;
                return Symbol::n(*out.find(name(x, s.id, y)));
            };
            if (pr.body.empty()) {
                if (p == r) out.add(head, {});
            } else if (pr.body.size() == 1) {
                if (auto s = sym(pr.body[0], p, r)) out.add(head, {*s});
            } else {
                for (int m = 0; m < q; ++m) {
                    auto s0 = sym(pr.body[0], p, m);
                    if (!s0) continue;
                    if (auto s1 = sym(pr.body[1], m, r)) out.add(head, {*s0, *s1});
                }
            }
        }
    }
    for (int p : nfa.initial)
        for (int f : nfa.finals)
            if (rel.count({p, g.start, f})) out.add(out.start, {Symbol::n(*out.find(name(p, g.start, f)))});
    return cfg_trim(out);
}

Cfg cfg_left_quotient(const Cfg& grammar, Letter a) {
    Cfg g = cfg_trim(grammar);
    const auto null = nullable(g);
    Cfg out;
    // Nonterminal A keeps its name; A' derives a\L(A).
    for (const auto& n : g.names) out.nonterminal(n);
    for (const auto& n : g.names) out.nonterminal(n + "'");
    out.start = *out.find(g.names[g.start] + "'");
    for (const auto& p : g.productions) out.productions.push_back(p);
    for (const auto& p : g.productions) {
        int head = *out.find(g.names[p.head] + "'");
        for (std::size_t i = 0; i < p.body.size(); ++i) {
            Symbol s = p.body[i];
            std::vector<Symbol> body;
            bool emit = true;
            if (s.terminal) emit = s.letter() == a;
            else body.push_back(Symbol::n(*out.find(g.names[s.id] + "'")));
            body.insert(body.end(), p.body.begin() + i + 1, p.body.end());
            if (emit) out.add(head, std::move(body));
            if (s.terminal || !null[s.id]) break;
        }
    }
    return cfg_trim(out);
}

Cfg cfg_right_quotient(const Cfg& grammar, Letter a) {
    Cfg g = cfg_trim(grammar);
    const auto null = nullable(g);
    Cfg out;
    for (const auto& n : g.names) out.nonterminal(n);
    for (const auto& n : g.names) out.nonterminal(n + "'");
    out.start = *out.find(g.names[g.start] + "'");
    for (const auto& p : g.productions) out.productions.push_back(p);
    for (const auto& p : g.productions) {
        int head = *out.find(g.names[p.head] + "'");
        for (std::size_t i = p.body.size(); i-- > 0;) {
            Symbol s = p.body[i];
            std::vector<Symbol> body(p.body.begin(), p.body.begin() + i);
            bool emit = true;
            if (s.terminal) emit = s.letter() == a;
            else body.push_back(Symbol::n(*out.find(g.names[s.id] + "'")));
            if (emit) out.add(head, std::move(body));
            if (s.terminal || !null[s.id]) break;
        }
    }
    return cfg_trim(out);
}

Cfg cfg_prefix_closure(const Cfg& grammar) {
    Cfg g = cfg_trim(grammar);
    if (cfg_is_empty(g)) return g;
    Cfg out;
    for (const auto& n : g.names) out.nonterminal(n);
    for (const auto& n : g.names) out.nonterminal(n + "'");
    out.start = *out.find(g.names[g.start] + "'");
    for (const auto& p : g.productions) out.productions.push_back(p);
    // After trimming every nonterminal is productive, so each has ε as a
    // prefix and every body prefix X1..X(i-1) derives some word.
    for (int a = 0; a < g.size(); ++a) out.add(*out.find(g.names[a] + "'"), {});
    for (const auto& p : g.productions) {
        int head = *out.find(g.names[p.head] + "'");
        for (std::size_t i = 0; i < p.body.size(); ++i) {
            std::vector<Symbol> body(p.body.begin(), p.body.begin() + i);
            Symbol s = p.body[i];
            body.push_back(s.terminal ? s : Symbol::n(*out.find(g.names[s.id] + "'")));
            out.add(head, std::move(body));
        }
    }
    return cfg_trim(out);
}

Cfg cfg_prepend(const Cfg& grammar, const Word& prefix) {
    Cfg out = grammar;
    int old = out.start;
    std::string name = "<prefixed>";
    while (out.find(name)) name += "'";
    int s = out.nonterminal(name);
    std::vector<Symbol> body;
    for (Letter a : prefix) body.push_back(Symbol::t(a));
    body.push_back(Symbol::n(old));
    out.add(s, std::move(body));
    out.start = s;
    return out;
}

}  // namespace pdlsep
