#ifndef PDLSEP_PUSHDOWN_HPP
#define PDLSEP_PUSHDOWN_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "pdlsep/dpda.hpp"

namespace pdlsep {

/// (p, X) -> (q, w) with |w| <= 2; `push` is written top-first.
struct PdsRule {
    int from;
    int top;
    int to;
    std::vector<int> push;
    auto operator<=>(const PdsRule&) const = default;
};

struct Pds {
    int states = 0;
    int symbols = 0;
    std::vector<PdsRule> rules;
};

/// Rules `p, X -> q, A B|A|_` over integer or named states and symbols.
/// Names are interned in order of appearance.
struct NamedPds {
    Pds pds;
    std::vector<std::string> state_names;
    std::vector<std::string> symbol_names;
};
NamedPds parse_pds(std::string_view text);

/// Finite automaton over stack symbols. States 0..control-1 stand for the
/// pushdown control states; (p, γ1…γk) is accepted iff γ1…γk (top first)
/// leads from p to a final state.
struct PAutomaton {
    int states = 0;
    int control = 0;
    std::set<std::tuple<int, int, int>> trans;  // (from, symbol, to)
    std::set<int> finals;

    int add_state() { return states++; }
    bool accepts(int p, const std::vector<int>& stack_top_first) const;
};

/// `trans s X t` and `final s …` lines; `states N` and `control C` give
/// sizes (defaulting to the largest mentioned index + 1).
PAutomaton parse_pautomaton(std::string_view text, const NamedPds& names);

enum class Worklist { Fifo, Lifo };

/// Saturation: the returned automaton accepts every configuration from which
/// some configuration accepted by `target` is reachable.
PAutomaton prestar(const Pds& pds, const PAutomaton& target, Worklist order = Worklist::Fifo);

/// Letters are dropped; stack words are reversed to top-first order and
/// longer replacements are split through fresh control states numbered after
/// the Dpda's own.
Pds pds_from_dpda(const Dpda& d);

/// Deterministic automaton accepting u iff some configuration met while
/// reading u (ε-steps after the last letter included) is accepted by `a`,
/// entering `a` at state entry[q] for control state q. Stack cells carry the
/// set of `a`-states accepting the stack below them.
Dpda dpda_config_filter(const Dpda& d, const PAutomaton& a, const std::vector<int>& entry);

/// Prefixes of words accepted by d, as a deterministic automaton.
Dpda dpda_prefix_closure(const Dpda& d);
/// L(d)/a = {u : ua ∈ L(d)}, as a deterministic automaton.
Dpda dpda_right_quotient(const Dpda& d, Letter a);

struct TraceStep {
    Config config;
    std::optional<Letter> consumed;  // letter read to reach this step
};

struct RunTrace {
    std::vector<TraceStep> steps;
    bool consumed_all = false;
    bool accepting = false;
    bool diverged = false;
};

RunTrace dpda_run(const Dpda& d, std::string_view w);

/// Indices whose stack is a prefix of every later stack in the trace.
std::vector<std::size_t> stair_positions(const RunTrace& t);

struct PumpingDecomposition {
    Word u0;
    Word u1;
    std::size_t first_step = 0;   // stair indices in the normalized trace
    std::size_t second_step = 0;
    std::string state;            // repeated normalized control state
    std::string top;              // repeated real top symbol
    std::size_t level = 0;        // stack height at both stairs
    std::size_t inspected = 0;    // letters of the stream traced
    std::vector<Word> checked;    // sampled x with u0·u1·x and u0·x both accepted
};

/// Finds u0, u1 ≠ ε at two stairs with equal control state and top, then
/// confirms on `samples` accepted prefixes u0·u1·x of the stream that u0·x is
/// accepted too. Throws CapExceeded when no such pair is found within
/// `max_letters`.
PumpingDecomposition pump_decompose(const Dpda& d, const std::function<Letter(std::size_t)>& stream,
                                    std::size_t samples = 5, std::size_t max_letters = 1u << 14);

}  // namespace pdlsep

#endif
