#ifndef PDLSEP_LTS_HPP
#define PDLSEP_LTS_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pdlsep/word.hpp"

namespace pdlsep {

/// Labeled transition system with named states.
struct Lts {
    std::vector<std::string> names;
    std::vector<std::set<std::string>> labels;
    std::vector<std::vector<std::pair<Letter, int>>> succ;

    int size() const { return static_cast<int>(names.size()); }
    int add_state(const std::string& name, std::set<std::string> props = {});
    void add_edge(int from, Letter a, int to) { succ[from].push_back({a, to}); }
    std::optional<int> find(const std::string& name) const;
    std::size_t edge_count() const;
    bool is_acyclic() const;
    /// Length of the longest path; only for acyclic systems.
    std::size_t longest_path() const;
};

struct Structure {
    Lts lts;
    int root = 0;
};

/// `state NAME [props p,q]`, `edge FROM LETTER TO`, `root NAME`.
Structure parse_structure(std::string_view text);
std::string to_text(const Structure& m);

/// π_w: a line of |w|+1 unlabeled states.
Structure path_structure(const Word& w);
/// Disjoint sum with all roots merged into one fresh unlabeled root.
Structure oplus(const std::vector<Structure>& ms);
/// S ⊆ S', → ⊆ →', labels agree on S, same root (states compared by name).
bool is_extension(const Structure& m, const Structure& bigger);

/// Finite tree with letter-labeled edges and a proposition bitmask per node.
struct Tree;
using TreePtr = std::shared_ptr<const Tree>;
struct Tree {
    std::uint32_t label = 0;
    std::vector<std::pair<Letter, TreePtr>> children;  // sorted by (letter, key)
    std::string key;
    std::size_t depth = 0;
    std::size_t nodes = 1;
};

TreePtr make_tree(std::uint32_t label, std::vector<std::pair<Letter, TreePtr>> children);
/// Props are numbered by their position in `props`.
Structure tree_structure(const TreePtr& t, const std::vector<std::string>& props = {});
/// Reads back a tree-shaped structure reachable from the root.
TreePtr structure_tree(const Structure& m, const std::vector<std::string>& props = {});

/// Trees of depth <= depth and out-degree <= branching, each labeled by a
/// subset of `props` (2^|props| labels), one per isomorphism class, in
/// canonical order. Throws CapExceeded above `cap` trees.
std::vector<TreePtr> enum_trees(const LetterSet& letters, std::size_t depth, std::size_t branching,
                                std::size_t prop_count = 0, std::size_t cap = 2'000'000);
/// Closed-form count of enum_trees without labels.
std::uint64_t count_trees(std::size_t letters, std::size_t depth, std::size_t branching);

}  // namespace pdlsep

#endif
