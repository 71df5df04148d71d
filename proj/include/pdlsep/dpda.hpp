#ifndef PDLSEP_DPDA_HPP
#define PDLSEP_DPDA_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pdlsep/automaton.hpp"
#include "pdlsep/cfg.hpp"
#include "pdlsep/word.hpp"

namespace pdlsep {

/// (from, letter or ε, top) -> (to, replace). `replace` substitutes the top
/// symbol and is written bottom-to-top: PUSH γ is {top, γ}, POP is {},
/// KEEP is {top}.
struct DpdaRule {
    int from;
    std::optional<Letter> letter;
    int top;
    int to;
    std::vector<int> replace;
};

/// Deterministic pushdown automaton with an initial stack word and acceptance
/// by final state.
struct Dpda {
    std::vector<std::string> states;
    std::vector<std::string> symbols;
    std::vector<DpdaRule> rules;
    int initial = 0;
    std::vector<int> initial_stack;  // bottom-to-top
    std::set<int> finals;

    int add_state(const std::string& name);
    int add_symbol(const std::string& name);
    int state_count() const { return static_cast<int>(states.size()); }
    int symbol_count() const { return static_cast<int>(symbols.size()); }
    LetterSet letters() const;
    /// Throws Error when two rules compete for one (state, top[, letter]).
    void check_deterministic() const;
    std::string str() const;
};

Dpda parse_dpda(std::string_view text);

struct Config {
    int state;
    std::vector<int> stack;  // bottom-to-top
    auto operator<=>(const Config&) const = default;
};

/// Indexed view used to run a Dpda.
class DpdaRunner {
public:
    explicit DpdaRunner(const Dpda& d);

    const Dpda& dpda() const { return d_; }
    Config initial() const { return {d_.initial, d_.initial_stack}; }
    const DpdaRule* rule(const Config& c, std::optional<Letter> a) const;
    static void apply(Config& c, const DpdaRule& r);

    /// Follows ε-rules from `c` until none applies. `visit` sees every
    /// configuration along the way, `c` included. Returns false when the
    /// ε-run provably never ends; `c` is then left at the repeat point.
    template <class Visit>
    bool close(Config& c, Visit&& visit) const;
    bool close(Config& c) const {
        return close(c, [](const Config&) {});
    }

    struct Outcome {
        bool accepted = false;
        bool consumed_all = false;
        bool diverged = false;
        Config last;
    };
    Outcome run(std::string_view w) const;
    bool accepts(std::string_view w) const { return run(w).accepted; }

private:
    Dpda d_;
    std::vector<int> eps_;                   // state * symbols + top -> rule
    std::vector<std::map<Letter, int>> by_letter_;
};

template <class Visit>
bool DpdaRunner::close(Config& c, Visit&& visit) const {
    // seen[h] holds (state, top) pairs met at height h whose lower stack has
    // not been touched since; a repeat at height >= h loops forever.
    std::vector<std::set<std::pair<int, int>>> seen;
    while (true) {
        visit(c);
        if (c.stack.empty()) return true;
        const DpdaRule* r = rule(c, std::nullopt);
        if (!r) return true;
        std::size_t h = c.stack.size();
        std::pair<int, int> key{c.state, c.stack.back()};
        for (std::size_t k = 1; k <= h && k < seen.size(); ++k)
            if (seen[k].count(key)) return false;
        if (seen.size() <= h) seen.resize(h + 1);
        seen[h].insert(key);
        apply(c, *r);
        std::size_t keep = std::min(h, c.stack.size());
        if (seen.size() > keep + 1) seen.resize(keep + 1);
    }
}

/// Dpda × Dfa; deterministic whenever the Dfa is.
Dpda dpda_product(const Dpda& d, const Dfa& dfa);
/// a\L(d); ∅ (no final states) when the run blocks or diverges before `a`.
Dpda dpda_left_quotient(const Dpda& d, Letter a);
Dpda dpda_prepend(const Dpda& d, const Word& prefix);

/// Every rule pops, pushes one symbol over the unchanged top, or keeps the
/// stack unchanged.
bool is_normalized(const Dpda& d);
/// Moves the current top into the control state; the real stack gains a
/// bottom marker. Control states are named (q,X) or (q,-) for an empty
/// original stack.
Dpda normalize_dpda(const Dpda& d);

/// Triple construction for final-state acceptance. Requires is_normalized.
Cfg pda_to_cfg(const Dpda& d);

}  // namespace pdlsep

#endif
