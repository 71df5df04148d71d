#ifndef PDLSEP_WORD_HPP
#define PDLSEP_WORD_HPP

#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pdlsep {

// Letters are single characters. The end marker is '$'; in text formats the
// empty word is written '_'.
using Letter = char;
using Word = std::string;
using LetterSet = std::set<Letter>;

inline constexpr Letter kDollar = '$';
inline constexpr std::string_view kEpsilonToken = "_";

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed textual input; `position` is a byte offset (or line number for
/// line-oriented files).
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " (at " + std::to_string(position) + ")"), position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// A size cap or search bound was exceeded.
class CapExceeded : public Error {
public:
    using Error::Error;
};

/// Finite alphabet Σ together with the distinguished end marker.
struct Alphabet {
    LetterSet letters;

    bool contains(Letter a) const { return letters.count(a) != 0; }
    /// Σ ∪ {$}.
    LetterSet with_dollar() const {
        LetterSet s = letters;
        s.insert(kDollar);
        return s;
    }
    static Alphabet of(std::string_view letters);
};

inline Alphabet Alphabet::of(std::string_view letters) {
    Alphabet a;
    for (char c : letters) {
        if (c == kDollar) throw Error("alphabet must not contain '$'");
        a.letters.insert(c);
    }
    return a;
}

Word reversed(const Word& w);
bool is_palindrome(std::string_view w);
bool is_prefix(std::string_view prefix, std::string_view w);
/// Word written in text form: "_" for ε, otherwise the word itself.
std::string show_word(const Word& w);
Word parse_word(std::string_view token);

/// Length-then-lexicographic order.
struct ShortLex {
    bool operator()(const Word& a, const Word& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};
using WordSet = std::set<Word, ShortLex>;

/// All words over `letters` of length at most `max_len`, in shortlex order.
std::vector<Word> all_words(const LetterSet& letters, std::size_t max_len);

/// Upper bound on enumerate/all_words lengths; overridable through the
/// PDLSEP_MAX_ENUM_LEN environment variable.
std::size_t enumeration_cap();

}  // namespace pdlsep

#endif
