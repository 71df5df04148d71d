#ifndef PDLSEP_CFG_HPP
#define PDLSEP_CFG_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <set>
#include <tuple>
#include <vector>

#include "pdlsep/automaton.hpp"
#include "pdlsep/word.hpp"

namespace pdlsep {

/// Grammar symbol: a terminal letter or an index into Cfg::names.
struct Symbol {
    bool terminal = true;
    int id = 0;

    static Symbol t(Letter a) { return {true, static_cast<unsigned char>(a)}; }
    static Symbol n(int id) { return {false, id}; }
    Letter letter() const { return static_cast<Letter>(id); }
    auto operator<=>(const Symbol&) const = default;
};

struct Production {
    int head;
    std::vector<Symbol> body;
    auto operator<=>(const Production&) const = default;
};

struct Cfg {
    std::vector<std::string> names;
    std::vector<Production> productions;
    int start = 0;

    int size() const { return static_cast<int>(names.size()); }
    /// Returns the index of `name`, creating the nonterminal if needed.
    int nonterminal(const std::string& name);
    std::optional<int> find(const std::string& name) const;
    void add(int head, std::vector<Symbol> body) { productions.push_back({head, std::move(body)}); }
    LetterSet terminals() const;
    std::string str() const;

private:
    std::map<std::string, int> index_;
};

/// Parses `S -> a S b | _` lines. The first head is the start symbol; every
/// token that appears as a head is a nonterminal, every other token must be a
/// single letter.
Cfg parse_cfg(std::string_view text);

std::vector<bool> nullable(const Cfg& g);
std::vector<bool> productive(const Cfg& g);
/// Drops unproductive and unreachable nonterminals. An empty language yields a
/// grammar with a production-less start symbol.
Cfg cfg_trim(const Cfg& g);
/// Every body has length at most 2.
Cfg cfg_binarize(const Cfg& g);

bool cfg_member(const Cfg& g, std::string_view w);
bool cfg_is_empty(const Cfg& g);
std::optional<Word> cfg_shortest_word(const Cfg& g);
std::set<Word> cfg_enumerate(const Cfg& g, const LetterSet& letters, std::size_t max_len);

/// Triples (p, A, r) such that A derives a word leading the automaton from p
/// to r. `g` must be binarized.
std::set<std::tuple<int, int, int>> cfg_summary(const Cfg& g, const Nfa& nfa);
/// L(g) ∩ L(nfa) by the triple construction; only productive triples are
/// materialized.
Cfg cfg_intersect(const Cfg& g, const Nfa& nfa);
Cfg cfg_left_quotient(const Cfg& g, Letter a);
Cfg cfg_right_quotient(const Cfg& g, Letter a);
Cfg cfg_prefix_closure(const Cfg& g);
Cfg cfg_prepend(const Cfg& g, const Word& prefix);

}  // namespace pdlsep

#endif
