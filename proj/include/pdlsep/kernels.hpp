#ifndef PDLSEP_KERNELS_HPP
#define PDLSEP_KERNELS_HPP

#include <optional>
#include <set>
#include <vector>

#include "pdlsep/formula.hpp"
#include "pdlsep/lts.hpp"
#include "pdlsep/type_search.hpp"

namespace pdlsep {

// Each kernel comes as a serial reference and an OpenMP version that returns
// the same value for any worker count.

/// First tree of enum_trees (canonical order) whose root falsifies f.
std::optional<TreePtr> brute_countermodel_serial(const Formula& f, const LetterSet& letters, SearchBounds bounds);
std::optional<TreePtr> brute_countermodel_parallel(const Formula& f, const LetterSet& letters, SearchBounds bounds,
                                                   int jobs);

/// {w ∈ Σ^{<=max_len} : π_{w$} ⊨ f}.
std::set<Word> lang_of_formula_serial(const Formula& f, const Alphabet& sigma, std::size_t max_len);
std::set<Word> lang_of_formula_parallel(const Formula& f, const Alphabet& sigma, std::size_t max_len, int jobs);

/// result[i][j] = check(structures[i], formulas[j]).
std::vector<std::vector<bool>> check_all_serial(const std::vector<Structure>& structures,
                                                const std::vector<Formula>& formulas);
std::vector<std::vector<bool>> check_all_parallel(const std::vector<Structure>& structures,
                                                  const std::vector<Formula>& formulas, int jobs);

}  // namespace pdlsep

#endif
