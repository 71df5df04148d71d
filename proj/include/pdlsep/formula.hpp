#ifndef PDLSEP_FORMULA_HPP
#define PDLSEP_FORMULA_HPP

#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pdlsep/environment.hpp"
#include "pdlsep/language.hpp"

namespace pdlsep {

enum class Op { False, True, Lit, Or, And, EF, AG };

struct LanguageRef {
    std::string name;
    LangPtr lang;
};

struct Node;
using Formula = std::shared_ptr<const Node>;

/// Negation-normal-form formula node. `key` is the printed form and serves as
/// the canonical structural key.
struct Node {
    Op op = Op::True;
    std::string prop;  // Lit
    bool negated = false;
    LanguageRef lang;  // EF, AG
    Formula left;      // Or/And left operand, EF/AG body
    Formula right;     // Or/And right operand
    std::string key;

    bool is_modal() const { return op == Op::EF || op == Op::AG; }
    const Formula& body() const { return left; }
};

Formula f_false();
Formula f_true();
Formula f_lit(std::string prop, bool negated = false);
Formula f_or(Formula a, Formula b);
Formula f_and(Formula a, Formula b);
Formula f_ef(LanguageRef l, Formula body);
Formula f_ag(LanguageRef l, Formula body);
Formula f_modal(Op op, LanguageRef l, Formula body);
inline Formula f_ef(LangPtr l, Formula body) { return f_ef(LanguageRef{l->name(), l}, std::move(body)); }
inline Formula f_ag(LangPtr l, Formula body) { return f_ag(LanguageRef{l->name(), l}, std::move(body)); }
/// Left-nested disjunction; False when empty.
Formula f_or_all(const std::vector<Formula>& fs);
/// Left-nested conjunction; True when empty.
Formula f_and_all(const std::vector<Formula>& fs);

/// Grammar: true | false | ident | !ident | (f | f | …) | (f & f & …) |
/// EF[name] f | AG[name] f. Names resolve in `env`.
Formula parse_formula(std::string_view text, const Environment& env);
inline const std::string& to_string(const Formula& f) { return f->key; }

/// NNF of ¬f.
Formula nnf_negate(const Formula& f);
/// ¬a ∨ b in NNF.
Formula f_implies(const Formula& a, const Formula& b);

std::set<std::string> props(const Formula& f);
/// Distinct annotation languages in order of first occurrence.
std::vector<LangPtr> languages(const Formula& f);
std::size_t count_ops(const Formula& f, Op op);
bool equal(const Formula& a, const Formula& b);

}  // namespace pdlsep

#endif
