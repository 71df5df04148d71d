#ifndef PDLSEP_TYPE_SEARCH_HPP
#define PDLSEP_TYPE_SEARCH_HPP

#include <cstddef>
#include <optional>

#include "pdlsep/formula.hpp"
#include "pdlsep/lts.hpp"

namespace pdlsep {

struct SearchBounds {
    std::size_t depth = 3;
    std::size_t branching = 2;
};

struct TypeSearchResult {
    /// Tree of depth <= bounds.depth and out-degree <= bounds.branching
    /// whose root falsifies the formula.
    std::optional<TreePtr> countermodel;
    std::vector<std::string> props;
    std::size_t levels = 0;
    std::size_t types = 0;
    /// No new types appeared at some level, so deeper trees add nothing.
    bool saturated = false;
};

/// Looks for a falsifying tree among all trees within the bounds, labeled by
/// subsets of props(f). Trees are grouped by the set of subformula facts
/// their nodes satisfy, so the search visits each such type once per level
/// and is equivalent to scanning enum_trees. `jobs` > 1 parallelizes the
/// union step; results do not depend on it.
TypeSearchResult find_countermodel(const Formula& f, const LetterSet& letters, SearchBounds bounds, int jobs = 1);

}  // namespace pdlsep

#endif
