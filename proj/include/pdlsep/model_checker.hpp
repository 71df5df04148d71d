#ifndef PDLSEP_MODEL_CHECKER_HPP
#define PDLSEP_MODEL_CHECKER_HPP

#include <optional>
#include <vector>

#include "pdlsep/formula.hpp"
#include "pdlsep/lts.hpp"
#include "pdlsep/type_search.hpp"
#include "pdlsep/verdict.hpp"

namespace pdlsep {

/// States of `lts` satisfying f. EF^L φ holds at s iff L meets the path
/// language from s into Sat(φ); AG^L φ iff L misses the path language from s
/// into the complement of Sat(φ).
std::vector<bool> sat_states(const Lts& lts, const Formula& f);
bool check(const Structure& m, const Formula& f);

/// The naive oracle could not settle a state within its path bound.
struct BoundInsufficient : Error {
    using Error::Error;
};

/// Semantics by explicit enumeration of paths up to `bound` letters. Throws
/// BoundInsufficient when a longer path could change the answer.
bool naive_check(const Structure& m, const Formula& f, std::size_t bound);

struct DerivedBounds {
    std::size_t depth = 0;
    std::size_t branching = 1;
    /// Every annotation language is finite, so the bounds make the search
    /// exact.
    bool exact = false;
};

/// depth: largest sum of longest-word lengths along a root-to-leaf path of
/// the syntax tree; branching: number of modal occurrences plus one.
/// Infinite languages contribute their shortest word length and clear
/// `exact`.
DerivedBounds derived_bounds(const Formula& f);

/// Countermodel search over trees within `bounds`. VALID only when every
/// language is finite and the bounds reach derived_bounds(f).
Verdict3 validity(const Formula& f, const LetterSet& letters, SearchBounds bounds, int jobs = 1);
/// validity with derived_bounds(f), raised to at least `floor`.
Verdict3 validity_derived(const Formula& f, const LetterSet& letters, SearchBounds floor = {0, 1}, int jobs = 1);

Formula equivalence_formula(const Formula& f, const Formula& g);
Verdict3 equivalent_bounded(const Formula& f, const Formula& g, const LetterSet& letters, SearchBounds bounds,
                            int jobs = 1);
Verdict3 equivalent_derived(const Formula& f, const Formula& g, const LetterSet& letters, int jobs = 1);

struct MonotoneReport {
    Verdict3 verdict;
    /// On refutation: a model of f and an extension of it that is not.
    std::optional<Structure> model;
    std::optional<Structure> extension;
};

/// Searches trees within the bounds for a model of f with a one-edge
/// extension (a fresh leaf, any label, under any node, or an edge to an
/// existing node) that falsifies f.
MonotoneReport structurally_monotone_bounded(const Formula& f, const LetterSet& letters, SearchBounds bounds);

struct WedgeReport {
    std::optional<std::size_t> index;
    std::vector<Verdict3> per_term;
    /// target ↔ delta ∨ ⋀ terms was refuted, so the hypothesis fails.
    std::optional<Verdict3> hypothesis;
};

/// Least i with target ↔ delta ∨ terms[i] VALID. Throws Error when terms is
/// empty and target is not equivalent to delta.
WedgeReport elim_wedge_ef(const Formula& delta, const std::vector<Formula>& terms, const Formula& target,
                          const LetterSet& letters, SearchBounds bounds, int jobs = 1);

}  // namespace pdlsep

#endif
