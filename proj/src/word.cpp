#include "pdlsep/word.hpp"

#include <algorithm>
#include <cstdlib>

namespace pdlsep {

Word reversed(const Word& w) { return Word(w.rbegin(), w.rend()); }

bool is_palindrome(std::string_view w) {
    return std::equal(w.begin(), w.begin() + w.size() / 2, w.rbegin());
}

bool is_prefix(std::string_view prefix, std::string_view w) {
    return prefix.size() <= w.size() && w.compare(0, prefix.size(), prefix) == 0;
}

std::string show_word(const Word& w) { return w.empty() ? std::string(kEpsilonToken) : w; }

Word parse_word(std::string_view token) {
    if (token == kEpsilonToken) return {};
    return Word(token);
}

std::vector<Word> all_words(const LetterSet& letters, std::size_t max_len) {
    if (max_len > enumeration_cap())
        throw CapExceeded("word length " + std::to_string(max_len) + " exceeds enumeration cap " +
                          std::to_string(enumeration_cap()));
    std::vector<Word> out{Word{}};
    std::size_t layer_begin = 0;
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::size_t layer_end = out.size();
        for (std::size_t i = layer_begin; i < layer_end; ++i)
            for (Letter a : letters) out.push_back(out[i] + a);
        layer_begin = layer_end;
    }
    return out;
}

std::size_t enumeration_cap() {
    if (const char* env = std::getenv("PDLSEP_MAX_ENUM_LEN")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0') return v;
    }
    return 16;
}

}  // namespace pdlsep
