#ifndef PDLSEP_SEPARATION_HPP
#define PDLSEP_SEPARATION_HPP

#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "pdlsep/dpda.hpp"
#include "pdlsep/formula.hpp"
#include "pdlsep/measure.hpp"
#include "pdlsep/model_checker.hpp"
#include "pdlsep/pushdown.hpp"
#include "pdlsep/transform.hpp"

namespace pdlsep {

/// {w ∈ Σ^{<=max_len} : π_{w$} ⊨ f}.
std::set<Word> lang_of_formula(const Formula& f, const Alphabet& sigma, std::size_t max_len, int jobs = 1);

struct ElimDollarResult {
    Formula result;  // δ ∨ EF^{L1} ψ ∨ EF^{L2} True
    LangPtr l1;
    LangPtr l2;
    bool l1_empty = false;
    bool l2_empty = false;
    /// Verdict on ¬ψ; refuted means ψ is satisfiable (the countermodel is a
    /// model of ψ).
    Verdict3 psi_satisfiable;
    bool measure_bounded = false;
};

ElimDollarResult elim_dollar(const Formula& delta, const LangPtr& l0, const Formula& psi, const LetterSet& letters,
                             SearchBounds bounds, int jobs = 1);

/// w_0 = vᴿ, w_{i+1} = w_i 1 0^i 1 w_iᴿ vᴿ. Throws Error if a word fails
/// v·w_i ∈ Pal or the prefix order.
std::vector<Word> witness_family(const Word& v, std::size_t count);
/// First n letters of the limit of witness_family(v).
Word limit_word_prefix(const Word& v, std::size_t n);
/// First position p >= from at which a block 1 0^κ 1 ends whose κ has not
/// appeared earlier; returns (κ, index after the block).
std::optional<std::pair<std::size_t, std::size_t>> first_new_block(const Word& w, std::size_t from);

bool prefix_ordered(const std::set<Word>& sample);

struct BoundRResult {
    Word uhat;
    std::set<Word> Uhat;
    struct Entry {
        Word w;
        std::size_t n = 0;
        Word residual;
    };
    std::vector<Entry> per_word;
    bool valid = true;
    std::string problem;
};

/// û = u0∖u1 and w = û^{N_w}·ŵ for every sampled w.
BoundRResult bound_r_decompose(const Word& u0, const Word& u1, const std::set<Word>& r_sample);

using Quad = std::tuple<Word, Word, Word, Word>;

/// A word that is not a prefix of any u0 u1^j u2^k u3, built in three stages
/// that step off the paths u0 u1^ω, then u0 u1^j u2^ω, then the finite words.
Word orthogonal_word(const std::vector<Quad>& quads, const LetterSet& letters);
/// Brute-force check over all j, k with |u0 u1^j u2^k u3| <= |w| + max|u3| + slack.
bool orthogonal_valid(const std::vector<Quad>& quads, const Word& w, std::size_t slack);

/// Right factor R_i of a good decomposition.
struct RightFactor {
    std::optional<std::set<Word>> words;
    Formula formula;  // R = Lang(formula)
    LangPtr lang;

    static RightFactor epsilon() { return {std::set<Word>{""}, nullptr, nullptr}; }
    std::set<Word> enumerate(const Alphabet& sigma, std::size_t max_len) const;
    std::string describe() const;
};

struct GoodPair {
    LangPtr left;
    RightFactor right;
    /// Two distinct members of `left`; absent for singleton left factors.
    std::optional<std::pair<Word, Word>> evidence;
    std::string note;
};

struct GoodDecomposition {
    std::vector<GoodPair> pairs;

    /// Every left factor has two evidence words.
    bool strict() const;
    std::set<Word> enumerate(const Alphabet& sigma, std::size_t max_len) const;
};

struct GoodCheckResult {
    bool structural_ok = true;
    std::vector<std::string> problems;
    /// Shortlex-first word on which the union and the target differ.
    std::optional<Word> counterexample;
    bool counterexample_in_target = false;
};

GoodCheckResult good_check(const GoodDecomposition& g, const Language& target, const Alphabet& sigma,
                           std::size_t max_len);

struct StageLog {
    std::string stage;
    std::string formula;
    std::string measure;
    /// The stage's output measure is not above its input measure.
    bool measure_bounded = true;
    std::vector<std::string> notes;
};

struct DescentLog {
    Word trail;
    std::string before;
    std::string after;
    bool strict = false;
};

struct ExtractResult {
    bool ok = false;
    GoodDecomposition decomposition;
    std::vector<StageLog> stages;
    std::vector<DescentLog> descents;
    std::string failed_stage;
    std::string reason;
};

struct ExtractOptions {
    /// P$ with f ≡ EF^{P$} True; f itself serves as target when absent.
    LangPtr target;
    /// Validity searches start from the derived bounds raised to this floor.
    SearchBounds floor{0, 1};
    std::size_t max_depth = 12;
    int jobs = 1;
};

/// Measure did not strictly decrease along the recursion.
struct InvariantBreach : Error {
    using Error::Error;
};

ExtractResult extract(const Formula& f, const Environment& env, const ExtractOptions& opts = {});

struct DemoConfig {
    std::vector<Formula> formulas;
    std::vector<std::pair<std::string, Dpda>> dpdas;
    std::size_t max_len = 10;
    Word v;
    int jobs = 1;
};

struct DemoReport {
    std::string text;
    struct FormulaEntry {
        std::string formula;
        bool extracted = false;
        std::string reason;
        std::optional<Word> counterexample;
        bool in_palindromes = false;
    };
    struct PumpEntry {
        std::string name;
        bool ok = false;
        std::string reason;
        PumpingDecomposition pump;
        std::size_t kappa = 0;
        std::size_t ell = 0;
    };
    std::vector<FormulaEntry> formulas;
    std::vector<PumpEntry> pumps;
};

DemoReport separation_demo(const DemoConfig& config, const Environment& env);

}  // namespace pdlsep

#endif
