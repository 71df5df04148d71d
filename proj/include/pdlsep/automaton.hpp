#ifndef PDLSEP_AUTOMATON_HPP
#define PDLSEP_AUTOMATON_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pdlsep/word.hpp"

namespace pdlsep {

/// ε-free nondeterministic finite automaton over single-character letters.
struct Nfa {
    struct Edge {
        Letter letter;
        int target;
        auto operator<=>(const Edge&) const = default;
    };

    std::vector<std::vector<Edge>> edges;  // indexed by source state
    std::set<int> initial;
    std::set<int> finals;

    int size() const { return static_cast<int>(edges.size()); }
    int add_state() {
        edges.emplace_back();
        return size() - 1;
    }
    void add_edge(int from, Letter a, int to) { edges[from].push_back({a, to}); }

    std::set<int> step(const std::set<int>& from, Letter a) const;
    bool accepts(std::string_view w) const;
    LetterSet letters() const;
};

/// Complete-or-partial deterministic automaton; missing transitions block.
struct Dfa {
    int initial = 0;
    std::vector<std::map<Letter, int>> delta;
    std::vector<bool> final;

    int size() const { return static_cast<int>(delta.size()); }
    std::optional<int> next(int state, Letter a) const {
        auto it = delta[state].find(a);
        if (it == delta[state].end()) return std::nullopt;
        return it->second;
    }
    bool accepts(std::string_view w) const;
    Nfa to_nfa() const;
};

/// Parses a regular expression: letters, `_` (ε), `[abc]`, `( )`, `|`,
/// postfix `*`, `+`, `?`. Whitespace is ignored.
Nfa nfa_from_regex(std::string_view regex);

Nfa nfa_from_words(const std::set<Word>& words);
/// Σ* over `letters`.
Nfa nfa_universal(const LetterSet& letters);
/// Σ⁺ over `letters`.
Nfa nfa_nonempty(const LetterSet& letters);
/// Σ*·{$} for Σ = `letters` (which must not contain '$').
Nfa nfa_words_then_dollar(const LetterSet& letters);

Dfa determinize(const Nfa& nfa, const LetterSet& letters);
/// Complete DFA recognising (letters)* ∖ {w}.
Dfa dfa_all_but(const LetterSet& letters, const Word& w);

Nfa product(const Nfa& a, const Nfa& b);
/// Keeps only states that are reachable and co-reachable.
Nfa trim(const Nfa& nfa);
bool is_empty(const Nfa& nfa);
std::optional<Word> shortest_word(const Nfa& nfa);

Nfa nfa_remove_epsilon(const Nfa& nfa);
Nfa nfa_left_quotient(const Nfa& nfa, Letter a);
Nfa nfa_right_quotient(const Nfa& nfa, Letter a);
/// All prefixes of accepted words.
Nfa nfa_prefix_closure(const Nfa& nfa);
Nfa nfa_prepend(const Nfa& nfa, const Word& prefix);

/// Words of length ≤ max_len, computed by breadth-first expansion pruned to
/// co-reachable states.
std::set<Word> nfa_enumerate(const Nfa& nfa, std::size_t max_len);

}  // namespace pdlsep

#endif
