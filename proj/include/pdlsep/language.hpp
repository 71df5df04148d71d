#ifndef PDLSEP_LANGUAGE_HPP
#define PDLSEP_LANGUAGE_HPP

#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>

#include "pdlsep/automaton.hpp"
#include "pdlsep/cfg.hpp"
#include "pdlsep/dpda.hpp"
#include "pdlsep/measure.hpp"
#include "pdlsep/word.hpp"

namespace pdlsep {

struct FiniteLang {
    std::set<Word> words;
};
struct RegularLang {
    Nfa nfa;
};
struct DpdaLang {
    Dpda dpda;
};
struct CfgLang {
    Cfg cfg;
};
/// Palindromes over `letters`, followed by '$' when `dollar` is set.
struct PalLang {
    LetterSet letters;
    bool dollar = false;
};

using Backend = std::variant<FiniteLang, RegularLang, DpdaLang, CfgLang, PalLang>;

class Language;
using LangPtr = std::shared_ptr<const Language>;

/// Immutable language value. Derived-language operations return new values
/// named after the operation (`L-eps`, `a\L`, `L/a`, …).
class Language {
public:
    Language(std::string name, LetterSet alphabet, Backend backend);

    static LangPtr make(std::string name, LetterSet alphabet, Backend backend);
    static LangPtr finite(std::string name, LetterSet alphabet, std::set<Word> words);

    const std::string& name() const { return name_; }
    /// Letters words may use; includes '$' where the language mentions it.
    const LetterSet& alphabet() const { return alphabet_; }
    const Backend& backend() const { return backend_; }
    const char* kind() const;
    bool is_finite_backend() const { return std::holds_alternative<FiniteLang>(backend_); }
    /// Only meaningful for finite backends.
    const std::set<Word>& words() const { return std::get<FiniteLang>(backend_).words; }

    bool member(std::string_view w) const;
    std::set<Word> enumerate(std::size_t max_len) const;
    bool is_empty() const;
    std::optional<Word> shortest_word() const;
    /// Two distinct members, if the language has at least two.
    std::optional<std::pair<Word, Word>> two_words() const;
    /// ||L||: |w| for a singleton {w}, ω otherwise (∅ included). Cached.
    OmegaPlusOne norm() const;
    /// Length of the longest word; only for finite backends.
    std::size_t longest_word() const;

    LangPtr remove_epsilon() const;
    LangPtr left_quotient(Letter a) const;
    LangPtr right_quotient(Letter a) const;
    LangPtr intersect_regular(const Nfa& r, const std::string& tag = "R") const;
    /// (L ∩ Σ*, prefixes of L lying in Σ*$), Σ being the alphabet minus '$'.
    std::pair<LangPtr, LangPtr> dollar_split() const;
    LangPtr prepend(const Word& prefix) const;
    LangPtr renamed(std::string name) const;

    /// Grammar for this language; available for every backend except
    /// finite and regular ones through their own conversions.
    Cfg to_cfg() const;

private:
    std::string name_;
    LetterSet alphabet_;
    Backend backend_;

    struct Cache {
        std::once_flag norm_once;
        OmegaPlusOne norm;
        std::once_flag cfg_once;
        Cfg cfg;
    };
    std::shared_ptr<Cache> cache_;
};

Cfg palindrome_cfg(const LetterSet& letters, bool dollar);

}  // namespace pdlsep

#endif
