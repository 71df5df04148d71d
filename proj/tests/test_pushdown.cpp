#include <doctest.h>

#include <deque>
#include <map>
#include <random>

#include "pdlsep/pushdown.hpp"
#include "support.hpp"

using namespace pdlsep;
using namespace pdlsep::test;

namespace {

using Conf = std::pair<int, std::vector<int>>;  // stack top first

// Configurations with stack height <= max_stack from which an accepted one is
// reachable, by backward closure over an explicit configuration graph.
std::set<Conf> backward_bfs(const Pds& p, const PAutomaton& target, std::size_t max_stack) {
    std::vector<Conf> all;
    std::vector<std::vector<int>> stacks{{}};
    for (std::size_t h = 1; h <= max_stack; ++h) {
        std::vector<std::vector<int>> next;
        for (const auto& s : stacks)
            if (s.size() == h - 1)
                for (int x = 0; x < p.symbols; ++x) {
                    auto t = s;
                    t.push_back(x);
                    next.push_back(t);
                }
        stacks.insert(stacks.end(), next.begin(), next.end());
    }
    for (int q = 0; q < p.states; ++q)
        for (const auto& s : stacks) all.push_back({q, s});
    std::set<Conf> good;
    for (const auto& c : all)
        if (target.accepts(c.first, c.second)) good.insert(c);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& c : all) {
            if (good.count(c) || c.second.empty()) continue;
            for (const auto& r : p.rules) {
                if (r.from != c.first || r.top != c.second.front()) continue;
                std::vector<int> s = r.push;
                s.insert(s.end(), c.second.begin() + 1, c.second.end());
                if (s.size() > max_stack + 1) continue;
                if (good.count({r.to, s}) || target.accepts(r.to, s)) {
                    good.insert(c);
                    changed = true;
                    break;
                }
            }
        }
    }
    return good;
}

}  // namespace

TEST_CASE("pre* of a popping rule accepts every stack of A") {
    Pds p{1, 1, {{0, 0, 0, {}}}};
    PAutomaton t;
    t.states = 1;
    t.control = 1;
    t.finals = {0};
    PAutomaton pre = prestar(p, t);
    for (std::size_t n = 0; n <= 6; ++n) CHECK(pre.accepts(0, std::vector<int>(n, 0)));
}

TEST_CASE("pre* without rules is the target") {
    Pds p{2, 2, {}};
    PAutomaton t;
    t.states = 3;
    t.control = 2;
    t.trans = {{0, 1, 2}};
    t.finals = {2};
    PAutomaton pre = prestar(p, t);
    CHECK(pre.trans == t.trans);
    CHECK(pre.finals == t.finals);
}

TEST_CASE("pre* for a single pop into q") {
    Pds p{2, 1, {{0, 0, 1, {}}}};
    PAutomaton t;
    t.states = 2;
    t.control = 2;
    t.finals = {1};
    PAutomaton pre = prestar(p, t);
    CHECK(pre.accepts(0, {0}));
    CHECK(pre.accepts(1, {}));
    CHECK_FALSE(pre.accepts(0, {}));
    CHECK_FALSE(pre.accepts(0, {0, 0}));
    CHECK_FALSE(pre.accepts(1, {0}));
}

TEST_CASE("pre* agrees with backward search on random systems") {
    std::mt19937 rng(3);
    for (int round = 0; round < 15; ++round) {
        Pds p;
        p.states = 1 + rng() % 3;
        p.symbols = 1 + rng() % 3;
        const int rules = 1 + rng() % 7;
        for (int i = 0; i < rules; ++i) {
            PdsRule r{int(rng() % p.states), int(rng() % p.symbols), int(rng() % p.states), {}};
            for (unsigned k = rng() % 3; k > 0; --k) r.push.push_back(rng() % p.symbols);
            p.rules.push_back(r);
        }
        PAutomaton t;
        t.control = p.states;
        t.states = p.states + 1;
        t.trans.insert({0, 0, p.states});
        t.finals = {p.states};
        PAutomaton fifo = prestar(p, t, Worklist::Fifo);
        PAutomaton lifo = prestar(p, t, Worklist::Lifo);
        CHECK(fifo.trans == lifo.trans);
        auto good = backward_bfs(p, t, 5);
        for (int q = 0; q < p.states; ++q)
            for (const auto& w : all_words({'0', '1', '2'}, 3)) {
                std::vector<int> s;
                bool ok = true;
                for (char c : w) {
                    if (c - '0' >= p.symbols) ok = false;
                    s.push_back(c - '0');
                }
                if (!ok) continue;
                // The bounded search misses runs that climb above its height cap.
                if (good.count({q, s})) CHECK(fifo.accepts(q, s));
            }
    }
}

TEST_CASE("pushdown system files") {
    NamedPds n = parse_pds("p, X -> q, Y X\nq, Y -> p, _\n");
    CHECK(n.pds.states == 2);
    CHECK(n.pds.symbols == 2);
    CHECK(n.state_names == std::vector<std::string>{"p", "q"});
    PAutomaton a = parse_pautomaton("trans p X f\nfinal f\n", n);
    PAutomaton pre = prestar(n.pds, a);
    CHECK(pre.accepts(1, {1, 0}));
    CHECK_THROWS_AS(parse_pds("p X q"), ParseError);
}

TEST_CASE("dpda runs") {
    Dpda d = cnrn_dpda();
    RunTrace t = dpda_run(d, "ccrr");
    CHECK(t.accepting);
    CHECK(t.consumed_all);
    std::size_t consumed = 0;
    for (const auto& s : t.steps)
        if (s.consumed) ++consumed;
    CHECK(consumed == 4);
    RunTrace b = dpda_run(d, "rc");
    CHECK_FALSE(b.consumed_all);
    CHECK(b.steps.size() == 1);
    RunTrace e = dpda_run(d, "");
    CHECK(e.steps.size() == 1);
    CHECK(e.steps[0].config == Config{0, {0}});
}

TEST_CASE("stair positions") {
    Dpda d = cnrn_dpda();
    RunTrace t = dpda_run(d, "ccrr");
    auto stairs = stair_positions(t);
    CHECK(std::find(stairs.begin(), stairs.end(), t.steps.size() - 1) != stairs.end());
    CHECK(std::find(stairs.begin(), stairs.end(), 1) == stairs.end());
    CHECK(std::find(stairs.begin(), stairs.end(), 2) == stairs.end());
    CHECK(stair_positions(dpda_run(d, "")) == std::vector<std::size_t>{0});
    Dpda push = parse_dpda("states q\nstack Z A\ninitial q Z\nfinal q\nq, a, Z -> q, PUSH A\nq, a, A -> q, PUSH A\n");
    CHECK(stair_positions(dpda_run(push, "aaa")) == std::vector<std::size_t>{0, 1, 2, 3});
}

TEST_CASE("normalization keeps the language") {
    Dpda swap = parse_dpda(R"(
states p q
stack Z A B
initial p Z
final q
p, a, Z -> p, PUSH A B
p, b, B -> p, REPLACE A
p, c, A -> q, POP
q, _, A -> p, KEEP
)");
    Dpda n = normalize_dpda(swap);
    CHECK(is_normalized(n));
    DpdaRunner r1(swap), r2(n);
    for (const auto& w : all_words({'a', 'b', 'c'}, 6)) CHECK(r1.accepts(w) == r2.accepts(w));
    Dpda c = normalize_dpda(cnrn_dpda());
    CHECK(DpdaRunner(c).accepts("ccrr"));
    CHECK_FALSE(DpdaRunner(c).accepts("ccr"));
}

TEST_CASE("nondeterministic rule sets are rejected") {
    CHECK_THROWS_AS(parse_dpda("states q\nstack Z\ninitial q Z\nq, a, Z -> q, KEEP\nq, _, Z -> q, KEEP\n"), Error);
}

TEST_CASE("pumping on a*") {
    Dpda d = parse_dpda("states q\nstack Z\ninitial q Z\nfinal q\nq, a, Z -> q, KEEP\n");
    PumpingDecomposition p = pump_decompose(d, [](std::size_t) { return 'a'; });
    CHECK(p.u0.empty());
    CHECK(p.u1 == "a");
}

TEST_CASE("pumping on (cr)* with acceptance after each r") {
    Dpda d = parse_dpda(R"(
states s t
stack Z C
initial s Z
final s
s, c, Z -> t, PUSH C
t, r, C -> s, POP
)");
    PumpingDecomposition p = pump_decompose(d, [](std::size_t i) { return i % 2 ? 'r' : 'c'; });
    CHECK(p.u1.size() == 2);
    CHECK((p.u1 == "cr" || p.u1 == "rc"));
    DpdaRunner run(d);
    for (const auto& x : p.checked) {
        CHECK(run.accepts(p.u0 + p.u1 + x));
        CHECK(run.accepts(p.u0 + x));
    }
}
