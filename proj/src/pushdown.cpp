#include "pdlsep/pushdown.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

namespace pdlsep {

namespace {

std::vector<std::string> tokens(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    for (std::string t; is >> t;) out.push_back(t);
    return out;
}

struct Interner {
    std::map<std::string, int> ids;
    std::vector<std::string>* names;
    int operator()(const std::string& n) {
        auto [it, fresh] = ids.try_emplace(n, static_cast<int>(names->size()));
        if (fresh) names->push_back(n);
        return it->second;
    }
};

}  // namespace

NamedPds parse_pds(std::string_view text) {
    NamedPds out;
    Interner state{{}, &out.state_names}, symbol{{}, &out.symbol_names};
    std::istringstream is{std::string(text)};
    std::size_t lineno = 0;
    for (std::string line; std::getline(is, line);) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        if (tokens(line).empty()) continue;
        auto arrow = line.find("->");
        if (arrow == std::string::npos) throw ParseError("expected '->' in pushdown rule", lineno);
        std::string lhs = line.substr(0, arrow), rhs = line.substr(arrow + 2);
        auto lc = lhs.find(','), rc = rhs.find(',');
        if (lc == std::string::npos || rc == std::string::npos) throw ParseError("malformed pushdown rule", lineno);
        auto p = tokens(lhs.substr(0, lc)), x = tokens(lhs.substr(lc + 1));
        auto q = tokens(rhs.substr(0, rc)), w = tokens(rhs.substr(rc + 1));
        if (p.size() != 1 || x.size() != 1 || q.size() != 1) throw ParseError("malformed pushdown rule", lineno);
        PdsRule r{state(p[0]), symbol(x[0]), state(q[0]), {}};
        if (!(w.size() == 1 && w[0] == kEpsilonToken))
            for (const auto& s : w) r.push.push_back(symbol(s));
        if (r.push.size() > 2) throw ParseError("pushdown rules push at most two symbols", lineno);
        out.pds.rules.push_back(std::move(r));
    }
    out.pds.states = static_cast<int>(out.state_names.size());
    out.pds.symbols = static_cast<int>(out.symbol_names.size());
    return out;
}

bool PAutomaton::accepts(int p, const std::vector<int>& stack) const {
    std::set<int> cur{p};
    for (int x : stack) {
        std::set<int> next;
        for (int s : cur)
            for (auto it = trans.lower_bound({s, x, 0}); it != trans.end() && std::get<0>(*it) == s &&
                                                         std::get<1>(*it) == x;
                 ++it)
                next.insert(std::get<2>(*it));
        cur = std::move(next);
        if (cur.empty()) return false;
    }
    return std::any_of(cur.begin(), cur.end(), [&](int s) { return finals.count(s) != 0; });
}

PAutomaton parse_pautomaton(std::string_view text, const NamedPds& names) {
    PAutomaton a;
    a.control = names.pds.states;
    std::map<std::string, int> ids;
    for (int i = 0; i < a.control; ++i) ids[names.state_names[i]] = i;
    a.states = a.control;
    auto state = [&](const std::string& n) {
        auto [it, fresh] = ids.try_emplace(n, a.states);
        if (fresh) ++a.states;
        return it->second;
    };
    std::map<std::string, int> sym;
    for (int i = 0; i < static_cast<int>(names.symbol_names.size()); ++i) sym[names.symbol_names[i]] = i;
    std::istringstream is{std::string(text)};
    std::size_t lineno = 0;
    for (std::string line; std::getline(is, line);) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        auto t = tokens(line);
        if (t.empty()) continue;
        if (t[0] == "trans" && t.size() == 4) {
            auto s = sym.find(t[2]);
            if (s == sym.end()) throw ParseError("unknown stack symbol '" + t[2] + "'", lineno);
            int to = state(t[3]);
            if (to < a.control) throw ParseError("transitions may not enter control states", lineno);
            a.trans.insert({state(t[1]), s->second, to});
        } else if (t[0] == "final") {
            for (std::size_t i = 1; i < t.size(); ++i) a.finals.insert(state(t[i]));
        } else {
            throw ParseError("expected 'trans s X t' or 'final …'", lineno);
        }
    }
    return a;
}

PAutomaton prestar(const Pds& pds, const PAutomaton& target, Worklist order) {
    using T = std::tuple<int, int, int>;
    PAutomaton out = target;
    out.trans.clear();
    std::deque<T> work(target.trans.begin(), target.trans.end());
    auto push = [&](const T& t) {
        if (!out.trans.count(t)) work.push_back(t);
    };
    // Rules indexed by their right-hand side: (q, γ) for |w| = 1, and
    // (q, γ) for the first symbol of |w| = 2.
    std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> unit;  // (q,γ) -> (p,X)
    std::map<std::pair<int, int>, std::vector<PdsRule>> twos;
    for (const auto& r : pds.rules) {
        if (r.push.empty()) push({r.from, r.top, r.to});
        else if (r.push.size() == 1) unit[{r.to, r.push[0]}].push_back({r.from, r.top});
        else twos[{r.to, r.push[0]}].push_back(r);
    }
    while (!work.empty()) {
        T t;
        if (order == Worklist::Fifo) {
            t = work.front();
            work.pop_front();
        } else {
            t = work.back();
            work.pop_back();
        }
        if (!out.trans.insert(t).second) continue;
        auto [q, g, q2] = t;
        if (auto it = unit.find({q, g}); it != unit.end())
            for (auto [p, x] : it->second) push({p, x, q2});
        if (auto it = twos.find({q, g}); it != twos.end()) {
            for (const auto& r : it->second) {
                // (p, X) -> (q, g g2): the derived rule (p, X) -> (q2, g2).
                unit[{q2, r.push[1]}].push_back({r.from, r.top});
                for (auto jt = out.trans.lower_bound({q2, r.push[1], 0});
                     jt != out.trans.end() && std::get<0>(*jt) == q2 && std::get<1>(*jt) == r.push[1]; ++jt)
                    push({r.from, r.top, std::get<2>(*jt)});
            }
        }
    }
    return out;
}

Pds pds_from_dpda(const Dpda& d) {
    Pds p;
    p.states = d.state_count();
    p.symbols = d.symbol_count();
    for (const auto& r : d.rules) {
        std::vector<int> w(r.replace.rbegin(), r.replace.rend());  // top first
        if (w.size() <= 2) {
            p.rules.push_back({r.from, r.top, r.to, w});
            continue;
        }
        // Push the lower part first through fresh states, the top last:
        // (from, X) -> (m1, w[k-2] w[k-1]) -> ... -> (to, w[0] w[1]).
        const std::size_t k = w.size();
        int cur = p.states++;
        p.rules.push_back({r.from, r.top, cur, {w[k - 2], w[k - 1]}});
        for (std::size_t i = k - 2; i-- > 0;) {
            int next = i == 0 ? r.to : p.states++;
            p.rules.push_back({cur, w[i + 1], next, {w[i], w[i + 1]}});
            cur = next;
        }
    }
    return p;
}

Dpda dpda_config_filter(const Dpda& d, const PAutomaton& a, const std::vector<int>& entry) {
    using StateSet = std::vector<bool>;
    std::map<StateSet, int> set_ids;
    std::vector<StateSet> sets;
    auto intern_set = [&](StateSet s) {
        auto [it, fresh] = set_ids.try_emplace(s, static_cast<int>(sets.size()));
        if (fresh) sets.push_back(std::move(s));
        return it->second;
    };
    std::vector<std::vector<std::pair<int, int>>> by_sym(d.symbol_count());
    for (auto [s, x, t] : a.trans)
        if (x < d.symbol_count()) by_sym[x].push_back({s, t});
    // acc(X, below): automaton states accepting X·below.
    auto acc = [&](int x, int below) {
        StateSet out(a.states, false);
        for (auto [s, t] : by_sym[x])
            if (sets[below][t]) out[s] = true;
        return intern_set(std::move(out));
    };
    StateSet fin(a.states, false);
    for (int f : a.finals) fin[f] = true;
    const int empty_id = intern_set(fin);

    Dpda out;
    std::map<std::pair<int, int>, int> cell_ids;  // (X, set below) -> symbol
    std::vector<std::pair<int, int>> cells;
    std::deque<int> work;
    auto cell = [&](int x, int below) {
        auto [it, fresh] = cell_ids.try_emplace({x, below}, out.symbol_count());
        if (fresh) {
            out.add_symbol(d.symbols[x] + "{" + std::to_string(below) + "}");
            cells.push_back({x, below});
            work.push_back(it->second);
        }
        return it->second;
    };
    for (int q = 0; q < d.state_count(); ++q) {
        out.add_state(d.states[q] + "|0");
        out.add_state(d.states[q] + "|1");
        out.finals.insert(2 * q + 1);
    }
    auto bit = [&](int q, int set_id) { return sets[set_id][entry[q]] ? 1 : 0; };

    int below = empty_id;
    for (int z : d.initial_stack) {
        out.initial_stack.push_back(cell(z, below));
        below = acc(z, below);
    }
    out.initial = 2 * d.initial + bit(d.initial, below);

    std::vector<std::vector<const DpdaRule*>> by_top(d.symbol_count());
    for (const auto& r : d.rules) by_top[r.top].push_back(&r);
    while (!work.empty()) {
        int c = work.front();
        work.pop_front();
        auto [x, under] = cells[c];
        for (const auto* r : by_top[x]) {
            std::vector<int> repl;
            int level = under;
            for (int y : r->replace) {
                repl.push_back(cell(y, level));
                level = acc(y, level);
            }
            int to = 2 * r->to + bit(r->to, level);
            for (int b = 0; b < 2; ++b) out.rules.push_back({2 * r->from + b, r->letter, c, to, repl});
        }
    }
    return out;
}

namespace {

// P-automaton accepting every configuration whose control state satisfies
// `is_target`, with any stack.
PAutomaton any_stack(int control, int symbols, const std::function<bool(int)>& is_target) {
    PAutomaton a;
    a.control = a.states = control;
    int sink = a.add_state();
    a.finals.insert(sink);
    for (int x = 0; x < symbols; ++x) a.trans.insert({sink, x, sink});
    for (int q = 0; q < control; ++q) {
        if (!is_target(q)) continue;
        a.finals.insert(q);
        for (int x = 0; x < symbols; ++x) a.trans.insert({q, x, sink});
    }
    return a;
}

}  // namespace

Dpda dpda_prefix_closure(const Dpda& d) {
    Pds p = pds_from_dpda(d);
    auto target = any_stack(p.states, p.symbols, [&](int q) { return d.finals.count(q) != 0; });
    auto pre = prestar(p, target);
    std::vector<int> entry(d.state_count());
    for (int q = 0; q < d.state_count(); ++q) entry[q] = q;
    return dpda_config_filter(d, pre, entry);
}

Dpda dpda_right_quotient(const Dpda& d, Letter a) {
    // Phase 0 runs ε-rules until an a-rule moves to phase 1, which runs
    // ε-rules only.
    Dpda phased;
    phased.symbols = d.symbols;
    for (int ph = 0; ph < 2; ++ph)
        for (const auto& s : d.states) phased.add_state(s + "/" + std::to_string(ph));
    const int n = d.state_count();
    for (const auto& r : d.rules) {
        if (!r.letter) {
            phased.rules.push_back({r.from, std::nullopt, r.top, r.to, r.replace});
            phased.rules.push_back({n + r.from, std::nullopt, r.top, n + r.to, r.replace});
        } else if (*r.letter == a) {
            phased.rules.push_back({r.from, std::nullopt, r.top, n + r.to, r.replace});
        }
    }
    Pds p = pds_from_dpda(phased);
    auto target = any_stack(p.states, p.symbols, [&](int q) { return q >= n && q < 2 * n && d.finals.count(q - n); });
    auto pre = prestar(p, target);
    std::vector<int> entry(n);
    for (int q = 0; q < n; ++q) entry[q] = q;
    return dpda_config_filter(d, pre, entry);
}

RunTrace dpda_run(const Dpda& d, std::string_view w) {
    DpdaRunner run(d);
    RunTrace t;
    Config c = run.initial();
    std::optional<Letter> pending;
    auto record = [&](const Config& x) {
        t.steps.push_back({x, pending});
        pending.reset();
    };
    for (Letter a : w) {
        if (!run.close(c, record)) {
            t.diverged = true;
            return t;
        }
        const DpdaRule* r = run.rule(c, a);
        if (!r) return t;
        DpdaRunner::apply(c, *r);
        pending = a;
    }
    t.consumed_all = true;
    bool final_seen = false;
    t.diverged = !run.close(c, [&](const Config& x) {
        record(x);
        final_seen = final_seen || d.finals.count(x.state);
    });
    t.accepting = final_seen;
    return t;
}

std::vector<std::size_t> stair_positions(const RunTrace& t) {
    std::vector<std::size_t> out;
    const auto& st = t.steps;
    for (std::size_t i = 0; i < st.size(); ++i) {
        const auto& base = st[i].config.stack;
        bool stair = true;
        for (std::size_t j = i + 1; j < st.size() && stair; ++j) {
            const auto& later = st[j].config.stack;
            stair = later.size() >= base.size() && std::equal(base.begin(), base.end(), later.begin());
        }
        if (stair) out.push_back(i);
    }
    return out;
}

namespace {

// One configuration of a normalized run, without the stack contents.
struct Slim {
    int state;
    int top;  // -1 for an empty real stack
    std::size_t height;
    std::size_t consumed;
};

struct SlimTrace {
    std::vector<Slim> steps;
    std::vector<std::size_t> accepted;  // prefix lengths whose closure meets a final state
};

SlimTrace slim_trace(const DpdaRunner& run, const std::function<Letter(std::size_t)>& stream, std::size_t n) {
    SlimTrace t;
    const auto& finals = run.dpda().finals;
    Config c = run.initial();
    std::size_t consumed = 0;
    bool final_seen = false;
    auto visit = [&](const Config& x) {
        t.steps.push_back({x.state, x.stack.empty() ? -1 : x.stack.back(), x.stack.size(), consumed});
        final_seen = final_seen || finals.count(x.state);
    };
    while (true) {
        final_seen = false;
        if (!run.close(c, visit)) throw Error("ε-divergence after " + std::to_string(consumed) + " letters");
        if (final_seen) t.accepted.push_back(consumed);
        if (consumed == n) return t;
        const DpdaRule* r = run.rule(c, stream(consumed));
        if (!r) throw Error("run blocks after " + std::to_string(consumed) + " letters of the stream");
        DpdaRunner::apply(c, *r);
        ++consumed;
    }
}

}  // namespace

PumpingDecomposition pump_decompose(const Dpda& d, const std::function<Letter(std::size_t)>& stream,
                                    std::size_t samples, std::size_t max_letters) {
    const Dpda nd = normalize_dpda(d);
    const DpdaRunner run(nd);
    auto prefix = [&](std::size_t from, std::size_t to) {
        Word w;
        for (std::size_t k = from; k < to; ++k) w.push_back(stream(k));
        return w;
    };
    std::string tried;
    for (std::size_t n = 32; n <= max_letters; n *= 2) {
        SlimTrace t = slim_trace(run, stream, n);
        const auto& st = t.steps;
        // Stairs: heights never undercut later in the trace. Only stairs in
        // the first half count, so that each has a long suffix as evidence.
        std::vector<bool> stair(st.size(), false);
        std::size_t low = static_cast<std::size_t>(-1);
        for (std::size_t i = st.size(); i-- > 0;) {
            stair[i] = st[i].height <= low;
            low = std::min(low, st[i].height);
        }
        std::map<std::pair<int, int>, std::size_t> first;  // (state, top) -> earliest stair
        for (std::size_t j = 0; j < st.size() && st[j].consumed <= n / 2; ++j) {
            if (!stair[j]) continue;
            std::pair<int, int> key{st[j].state, st[j].top};
            auto it = first.find(key);
            if (it == first.end()) {
                first[key] = j;
                continue;
            }
            std::size_t i = it->second;
            if (st[j].consumed == st[i].consumed) continue;
            std::vector<std::size_t> later;
            for (std::size_t k : t.accepted)
                if (k >= st[j].consumed) later.push_back(k);
            if (later.size() < samples) continue;
            PumpingDecomposition out;
            out.u0 = prefix(0, st[i].consumed);
            out.u1 = prefix(st[i].consumed, st[j].consumed);
            out.first_step = i;
            out.second_step = j;
            out.state = nd.states[st[i].state];
            out.top = st[i].top < 0 ? "-" : nd.symbols[st[i].top];
            out.level = st[i].height;
            out.inspected = n;
            bool ok = true;
            for (std::size_t s = 0; s < samples && ok; ++s) {
                std::size_t k = later[s * (later.size() - 1) / std::max<std::size_t>(1, samples - 1)];
                Word x = prefix(st[j].consumed, k);
                ok = run.accepts(out.u0 + x);
                out.checked.push_back(std::move(x));
            }
            if (ok) return out;
            tried += " [" + std::to_string(i) + "," + std::to_string(j) + "]";
        }
    }
    throw CapExceeded("no pumpable stair pair within " + std::to_string(max_letters) + " letters" +
                      (tried.empty() ? std::string() : "; rejected pairs:" + tried));
}

}  // namespace pdlsep
