#ifndef PDLSEP_TESTS_SUPPORT_HPP
#define PDLSEP_TESTS_SUPPORT_HPP

#include <random>
#include <set>
#include <string>

#include "pdlsep/dpda.hpp"
#include "pdlsep/environment.hpp"
#include "pdlsep/formula.hpp"
#include "pdlsep/language.hpp"

namespace pdlsep::test {

/// {cⁿrⁿ : n ≥ 1}, accepted by final state after an ε-step on the bottom.
inline Dpda cnrn_dpda() {
    return parse_dpda(R"(
states q0 q1 q2
stack Z C
initial q0 Z
final q2
q0, c, Z -> q0, PUSH C
q0, c, C -> q0, PUSH C
q0, r, C -> q1, POP
q1, r, C -> q1, POP
q1, _, Z -> q2, KEEP
)");
}

inline LangPtr finite(const std::string& name, std::set<Word> words, const std::string& alphabet = "ab$") {
    return Language::finite(name, LetterSet(alphabet.begin(), alphabet.end()), std::move(words));
}

inline LangPtr pal(const std::string& letters, bool dollar = false) {
    LetterSet ls(letters.begin(), letters.end());
    LetterSet alpha = ls;
    if (dollar) alpha.insert(kDollar);
    return Language::make(dollar ? "Pal$" : "Pal", alpha, PalLang{ls, dollar});
}

inline Environment env_of(const std::string& text) { return parse_environment(text); }

/// All words over `letters` of length at most n, filtered by a predicate.
template <class Pred>
std::set<Word> brute_words(const std::string& letters, std::size_t n, Pred pred) {
    std::set<Word> out;
    for (const auto& w : all_words(LetterSet(letters.begin(), letters.end()), n))
        if (pred(w)) out.insert(w);
    return out;
}

}  // namespace pdlsep::test

#endif
