#ifndef PDLSEP_TRANSFORM_HPP
#define PDLSEP_TRANSFORM_HPP

#include <functional>
#include <string>
#include <vector>

#include "pdlsep/formula.hpp"
#include "pdlsep/measure.hpp"
#include "pdlsep/verdict.hpp"

namespace pdlsep {

/// No annotation contains ε, recursively.
bool is_epsilon_free(const Formula& f);

/// Q^L φ with ε ∈ L becomes φ' ∨ EF^{L∖ε} φ' (EF) or φ' ∧ AG^{L∖ε} φ' (AG),
/// where φ' is the rewritten body. When L∖ε is empty the modal part is
/// dropped, being False under EF and True under AG.
Formula elim_ew(const Formula& f);

/// Adds every annotation language of f not yet bound in env.
void adopt_languages(Environment& env, const Formula& f);

/// μ(f). Throws Error naming the language whose norm cannot be decided.
Measure measure(const Formula& f);

/// Conjunction of literals, AG-formulas and EF-formulas, each list sorted by
/// key and duplicate-free.
struct Term {
    std::vector<Formula> lits;
    std::vector<Formula> ag;
    std::vector<Formula> ef;

    std::string key() const;
    bool operator==(const Term& o) const { return key() == o.key(); }
};

/// Disjunction of terms in canonical order. No terms means False; an empty
/// term means True.
struct Dnf {
    std::vector<Term> terms;

    void canonicalize();
    std::string str() const;
};

Term make_term(std::vector<Formula> lits, std::vector<Formula> ag, std::vector<Formula> ef);
/// Distributes ∧ over ∨ with modal subformulas as atoms.
Dnf to_dnf(const Formula& f);
Formula term_to_formula(const Term& t);
Formula dnf_to_formula(const Dnf& d);
Measure measure(const Dnf& d);

using ValidityOracle = std::function<Verdict3(const Formula&)>;

struct CompletionReport {
    Dnf result;
    /// EF-subsets added as new terms.
    std::vector<std::vector<Formula>> added;
    /// EF-subsets the oracle could not decide.
    std::vector<std::vector<Formula>> unknown;
    std::size_t oracle_calls = 0;
    /// Subsets settled without the oracle (a term already implied by them,
    /// or a valid subset below them).
    std::size_t shortcuts = 0;
};

/// ϑ ∨ ⋁ {⋀Ψ' : Ψ' ⊆ Ψ, ⊨ ⋀Ψ' → ϑ} with Ψ the EF-conjuncts of ϑ.
CompletionReport complete(const Dnf& d, const ValidityOracle& oracle);

struct ElimAgReport {
    Dnf result;
    bool partial = false;
    /// Term indices whose AG-part the oracle could not decide; those terms
    /// are kept unchanged.
    std::vector<std::size_t> undecided;
    std::vector<Verdict3::Kind> verdicts;
};

/// Keeps the terms whose AG-part (literals included) is valid, minus that
/// part.
ElimAgReport elim_ag(const Dnf& d, const ValidityOracle& oracle);

}  // namespace pdlsep

#endif
