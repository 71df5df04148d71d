#include "pdlsep/dpda.hpp"

#include <array>
#include <functional>
#include <deque>
#include <sstream>

namespace pdlsep {

int Dpda::add_state(const std::string& name) {
    states.push_back(name);
    return state_count() - 1;
}

int Dpda::add_symbol(const std::string& name) {
    symbols.push_back(name);
    return symbol_count() - 1;
}

LetterSet Dpda::letters() const {
    LetterSet out;
    for (const auto& r : rules)
        if (r.letter) out.insert(*r.letter);
    return out;
}

void Dpda::check_deterministic() const {
    std::map<std::pair<int, int>, bool> has_eps;
    std::set<std::tuple<int, int, Letter>> seen;
    std::set<std::pair<int, int>> has_letter;
    for (const auto& r : rules) {
        std::pair<int, int> key{r.from, r.top};
        auto where = "(" + states[r.from] + ", " + symbols[r.top] + ")";
        if (r.letter) {
            if (has_eps.count(key) || !seen.insert({r.from, r.top, *r.letter}).second)
                throw Error("nondeterministic rules at " + where);
            has_letter.insert(key);
        } else {
            if (has_eps.count(key) || has_letter.count(key)) throw Error("nondeterministic rules at " + where);
            has_eps[key] = true;
        }
    }
}

std::string Dpda::str() const {
    std::ostringstream os;
    auto list = [&](const std::vector<std::string>& xs) {
        for (const auto& x : xs) os << ' ' << x;
        os << '\n';
    };
    os << "states";
    list(states);
    os << "stack";
    list(symbols);
    os << "initial " << states[initial];
    for (int z : initial_stack) os << ' ' << symbols[z];
    os << "\nfinal";
    for (int f : finals) os << ' ' << states[f];
    os << '\n';
    for (const auto& r : rules) {
        os << states[r.from] << ", " << (r.letter ? std::string(1, *r.letter) : std::string(kEpsilonToken)) << ", "
           << symbols[r.top] << " -> " << states[r.to] << ", ";
        if (r.replace.empty()) {
            os << "POP";
        } else if (r.replace.size() == 1 && r.replace[0] == r.top) {
            os << "KEEP";
        } else if (r.replace.front() == r.top) {
            os << "PUSH";
            for (std::size_t i = 1; i < r.replace.size(); ++i) os << ' ' << symbols[r.replace[i]];
        } else {
            os << "REPLACE";
            for (int x : r.replace) os << ' ' << symbols[x];
        }
        os << '\n';
    }
    return os.str();
}

namespace {

std::vector<std::string> tokens(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    for (std::string t; is >> t;) out.push_back(t);
    return out;
}

std::string strip(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

Dpda parse_dpda(std::string_view text) {
    Dpda d;
    std::map<std::string, int> state_ids, symbol_ids;
    bool states_declared = false, stack_declared = false, have_initial = false;
    std::size_t lineno = 0;
    auto state = [&](const std::string& n) {
        auto it = state_ids.find(n);
        if (it != state_ids.end()) return it->second;
        if (states_declared) throw ParseError("undeclared state '" + n + "'", lineno);
        return state_ids[n] = d.add_state(n);
    };
    auto symbol = [&](const std::string& n) {
        auto it = symbol_ids.find(n);
        if (it != symbol_ids.end()) return it->second;
        if (stack_declared) throw ParseError("undeclared stack symbol '" + n + "'", lineno);
        return symbol_ids[n] = d.add_symbol(n);
    };
    std::istringstream is{std::string(text)};
    for (std::string line; std::getline(is, line);) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line = strip(line);
        if (line.empty()) continue;
        auto arrow = line.find("->");
        if (arrow == std::string::npos) {
            auto t = tokens(line);
            const std::string& kw = t[0];
            if (kw == "states") {
                for (std::size_t i = 1; i < t.size(); ++i) state(t[i]);
                states_declared = true;
            } else if (kw == "stack") {
                for (std::size_t i = 1; i < t.size(); ++i) symbol(t[i]);
                stack_declared = true;
            } else if (kw == "initial") {
                if (t.size() < 2) throw ParseError("initial needs a state", lineno);
                d.initial = state(t[1]);
                for (std::size_t i = 2; i < t.size(); ++i) d.initial_stack.push_back(symbol(t[i]));
                have_initial = true;
            } else if (kw == "final") {
                for (std::size_t i = 1; i < t.size(); ++i) d.finals.insert(state(t[i]));
            } else {
                throw ParseError("unknown directive '" + kw + "'", lineno);
            }
            continue;
        }
        // q, a|_, X -> q', OP args
        std::string lhs = line.substr(0, arrow), rhs = line.substr(arrow + 2);
        std::vector<std::string> l;
        for (std::size_t from = 0;;) {
            auto comma = lhs.find(',', from);
            l.push_back(strip(lhs.substr(from, comma == std::string::npos ? std::string::npos : comma - from)));
            if (comma == std::string::npos) break;
            from = comma + 1;
        }
        auto comma = rhs.find(',');
        if (l.size() != 3 || comma == std::string::npos) throw ParseError("malformed rule", lineno);
        DpdaRule r;
        r.from = state(l[0]);
        if (l[1] == kEpsilonToken) r.letter = std::nullopt;
        else if (l[1].size() == 1) r.letter = l[1][0];
        else throw ParseError("rule letter must be a single character or '_'", lineno);
        r.top = symbol(l[2]);
        r.to = state(strip(rhs.substr(0, comma)));
        auto op = tokens(rhs.substr(comma + 1));
        if (op.empty()) throw ParseError("missing stack operation", lineno);
        std::vector<int> args;
        for (std::size_t i = 1; i < op.size(); ++i) args.push_back(symbol(op[i]));
        if (op[0] == "POP" && args.empty()) {
        } else if (op[0] == "KEEP" && args.empty()) {
            r.replace = {r.top};
        } else if (op[0] == "PUSH" && !args.empty()) {
            r.replace = {r.top};
            r.replace.insert(r.replace.end(), args.begin(), args.end());
        } else if (op[0] == "REPLACE") {
            r.replace = args;
        } else {
            throw ParseError("bad stack operation '" + op[0] + "'", lineno);
        }
        d.rules.push_back(std::move(r));
    }
    if (!have_initial) throw ParseError("missing 'initial' line", lineno);
    d.check_deterministic();
    return d;
}

DpdaRunner::DpdaRunner(const Dpda& d) : d_(d) {
    d_.check_deterministic();
    const int n = d_.state_count() * d_.symbol_count();
    eps_.assign(n, -1);
    by_letter_.resize(n);
    for (int i = 0; i < static_cast<int>(d_.rules.size()); ++i) {
        const auto& r = d_.rules[i];
        int key = r.from * d_.symbol_count() + r.top;
        if (r.letter) by_letter_[key][*r.letter] = i;
        else eps_[key] = i;
    }
}

const DpdaRule* DpdaRunner::rule(const Config& c, std::optional<Letter> a) const {
    if (c.stack.empty()) return nullptr;
    int key = c.state * d_.symbol_count() + c.stack.back();
    if (!a) return eps_[key] < 0 ? nullptr : &d_.rules[eps_[key]];
    auto it = by_letter_[key].find(*a);
    return it == by_letter_[key].end() ? nullptr : &d_.rules[it->second];
}

void DpdaRunner::apply(Config& c, const DpdaRule& r) {
    c.state = r.to;
    c.stack.pop_back();
    c.stack.insert(c.stack.end(), r.replace.begin(), r.replace.end());
}

DpdaRunner::Outcome DpdaRunner::run(std::string_view w) const {
    Outcome out;
    Config c = initial();
    for (Letter a : w) {
        if (!close(c)) {
            out.diverged = true;
            out.last = std::move(c);
            return out;
        }
        const DpdaRule* r = rule(c, a);
        if (!r) {
            out.last = std::move(c);
            return out;
        }
        apply(c, *r);
    }
    out.consumed_all = true;
    bool final_seen = false;
    out.diverged = !close(c, [&](const Config& x) { final_seen = final_seen || d_.finals.count(x.state); });
    out.accepted = final_seen;
    out.last = std::move(c);
    return out;
}

Dpda dpda_product(const Dpda& d, const Dfa& dfa) {
    Dpda out;
    out.symbols = d.symbols;
    std::map<std::pair<int, int>, int> ids;
    std::deque<std::pair<int, int>> work;
    auto intern = [&](int q, int s) {
        auto [it, fresh] = ids.try_emplace({q, s}, 0);
        if (fresh) {
            it->second = out.add_state("(" + d.states[q] + "," + std::to_string(s) + ")");
            if (d.finals.count(q) && dfa.final[s]) out.finals.insert(it->second);
            work.push_back({q, s});
        }
        return it->second;
    };
    std::vector<std::vector<const DpdaRule*>> from(d.state_count());
    for (const auto& r : d.rules) from[r.from].push_back(&r);
    out.initial = intern(d.initial, dfa.initial);
    out.initial_stack = d.initial_stack;
    while (!work.empty()) {
        auto [q, s] = work.front();
        work.pop_front();
        int id = ids.at({q, s});
        for (const auto* r : from[q]) {
            int t = s;
            if (r->letter) {
                auto n = dfa.next(s, *r->letter);
                if (!n) continue;
                t = *n;
            }
            out.rules.push_back({id, r->letter, r->top, intern(r->to, t), r->replace});
        }
    }
    return out;
}

Dpda dpda_left_quotient(const Dpda& d, Letter a) {
    DpdaRunner run(d);
    Config c = run.initial();
    Dpda out = d;
    const DpdaRule* r = nullptr;
    if (run.close(c)) r = run.rule(c, a);
    if (!r) {
        out.finals.clear();
        return out;
    }
    DpdaRunner::apply(c, *r);
    out.initial = c.state;
    out.initial_stack = c.stack;
    return out;
}

Dpda dpda_prepend(const Dpda& d, const Word& prefix) {
    if (prefix.empty()) return d;
    Dpda out = d;
    int top;
    if (out.initial_stack.empty()) {
        top = out.add_symbol("<bottom>");
        out.initial_stack = {top};
    } else {
        top = out.initial_stack.back();
    }
    int cur = out.add_state("<pre0>");
    int start = cur;
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        int next = i + 1 == prefix.size() ? d.initial : out.add_state("<pre" + std::to_string(i + 1) + ">");
        out.rules.push_back({cur, prefix[i], top, next, {top}});
        cur = next;
    }
    out.initial = start;
    return out;
}

bool is_normalized(const Dpda& d) {
    for (const auto& r : d.rules) {
        bool pop = r.replace.empty();
        bool keep = r.replace.size() == 1 && r.replace[0] == r.top;
        bool push = r.replace.size() == 2 && r.replace[0] == r.top;
        if (!pop && !keep && !push) return false;
    }
    return true;
}

Dpda normalize_dpda(const Dpda& d) {
    if (is_normalized(d)) return d;
    Dpda out;
    const int g = d.symbol_count();
    for (const auto& s : d.symbols) out.add_symbol(s);
    const int bottom = out.add_symbol("<bot>");
    // Control state (q, t) with t in 0..g-1, or t = g for an empty original stack.
    std::vector<int> ctl(d.state_count() * (g + 1));
    for (int q = 0; q < d.state_count(); ++q)
        for (int t = 0; t <= g; ++t) {
            ctl[q * (g + 1) + t] = out.add_state("(" + d.states[q] + "," + (t < g ? d.symbols[t] : "-") + ")");
            if (d.finals.count(q)) out.finals.insert(ctl[q * (g + 1) + t]);
        }
    auto at = [&](int q, int t) { return ctl[q * (g + 1) + t]; };
    int tmp = 0;
    for (const auto& r : d.rules) {
        for (int y = 0; y <= g; ++y) {
            const int real = y < g ? y : bottom;  // current real top
            const int src = at(r.from, r.top);
            const auto& b = r.replace;
            if (b.empty()) {
                // Original pop: the real top moves into the control state.
                if (real == bottom) out.rules.push_back({src, r.letter, real, at(r.to, g), {real}});
                else out.rules.push_back({src, r.letter, real, at(r.to, real), {}});
            } else if (b.size() == 1) {
                out.rules.push_back({src, r.letter, real, at(r.to, b[0]), {real}});
            } else {
                // Push b[0..k-2] onto the real stack one symbol at a time;
                // b[k-1] becomes the new control top.
                int cur = src;
                int below = real;
                std::optional<Letter> letter = r.letter;
                for (std::size_t i = 0; i + 1 < b.size(); ++i) {
                    bool last = i + 2 == b.size();
                    int next = last ? at(r.to, b.back()) : out.add_state("<n" + std::to_string(tmp++) + ">");
                    out.rules.push_back({cur, letter, below, next, {below, b[i]}});
                    letter = std::nullopt;
                    cur = next;
                    below = b[i];
                }
            }
        }
    }
    const auto& z = d.initial_stack;
    out.initial = at(d.initial, z.empty() ? g : z.back());
    out.initial_stack = {bottom};
    if (!z.empty()) out.initial_stack.insert(out.initial_stack.end(), z.begin(), z.end() - 1);
    return out;
}

Cfg pda_to_cfg(const Dpda& d) {
    if (!is_normalized(d)) throw Error("pda_to_cfg needs a normalized Dpda");
    std::vector<std::vector<const DpdaRule*>> by(d.state_count() * d.symbol_count());
    for (const auto& r : d.rules) by[r.from * d.symbol_count() + r.top].push_back(&r);
    const int nq = d.state_count();
    Cfg g;
    // Nonterminals are created on demand and expanded from a worklist.
    std::deque<std::pair<int, std::array<int, 3>>> work;  // kind, args
    auto pop_nt = [&](int p, int x, int q) {
        std::string name = "[" + d.states[p] + " " + d.symbols[x] + " " + d.states[q] + "]";
        bool fresh = !g.find(name);
        int id = g.nonterminal(name);
        if (fresh) work.push_back({0, {p, x, q}});
        return Symbol::n(id);
    };
    auto stay_nt = [&](int p, int x) {
        std::string name = "<" + d.states[p] + " " + d.symbols[x] + ">";
        bool fresh = !g.find(name);
        int id = g.nonterminal(name);
        if (fresh) work.push_back({1, {p, x, 0}});
        return Symbol::n(id);
    };
    auto with_letter = [](const DpdaRule* r, std::vector<Symbol> rest) {
        if (r->letter) rest.insert(rest.begin(), Symbol::t(*r->letter));
        return rest;
    };
    g.start = g.nonterminal("S");
    // S_i(q): from q with the bottom i initial symbols on the stack, reach a
    // final state.
    const auto& z = d.initial_stack;
    std::vector<std::vector<int>> start_nt(z.size() + 1, std::vector<int>(nq, -1));
    std::function<Symbol(int, int)> start_at = [&](int i, int q) -> Symbol {
        if (start_nt[i][q] >= 0) return Symbol::n(start_nt[i][q]);
        int id = g.nonterminal("S" + std::to_string(i) + "(" + d.states[q] + ")");
        start_nt[i][q] = id;
        if (i == 0) {
            if (d.finals.count(q)) g.add(id, {});
            return Symbol::n(id);
        }
        g.add(id, {stay_nt(q, z[i - 1])});
        for (int r = 0; r < nq; ++r) g.add(id, {pop_nt(q, z[i - 1], r), start_at(i - 1, r)});
        return Symbol::n(id);
    };
    g.add(g.start, {start_at(static_cast<int>(z.size()), d.initial)});
    while (!work.empty()) {
        auto [kind, a] = work.front();
        work.pop_front();
        const int p = a[0], x = a[1], q = a[2];
        if (kind == 0) {
            int head = *g.find("[" + d.states[p] + " " + d.symbols[x] + " " + d.states[q] + "]");
            for (const auto* r : by[p * d.symbol_count() + x]) {
                if (r->replace.empty()) {
                    if (r->to == q) g.add(head, with_letter(r, {}));
                } else if (r->replace.size() == 1) {
                    g.add(head, with_letter(r, {pop_nt(r->to, x, q)}));
                } else {
                    int y = r->replace[1];
                    for (int m = 0; m < nq; ++m) g.add(head, with_letter(r, {pop_nt(r->to, y, m), pop_nt(m, x, q)}));
                }
            }
        } else {
            int head = *g.find("<" + d.states[p] + " " + d.symbols[x] + ">");
            if (d.finals.count(p)) g.add(head, {});
            for (const auto* r : by[p * d.symbol_count() + x]) {
                if (r->replace.empty()) continue;
                if (r->replace.size() == 1) {
                    g.add(head, with_letter(r, {stay_nt(r->to, x)}));
                } else {
                    int y = r->replace[1];
                    g.add(head, with_letter(r, {stay_nt(r->to, y)}));
                    for (int m = 0; m < nq; ++m) g.add(head, with_letter(r, {pop_nt(r->to, y, m), stay_nt(m, x)}));
                }
            }
        }
    }
    return cfg_trim(g);
}

}  // namespace pdlsep
