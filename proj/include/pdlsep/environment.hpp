#ifndef PDLSEP_ENVIRONMENT_HPP
#define PDLSEP_ENVIRONMENT_HPP

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "pdlsep/language.hpp"

namespace pdlsep {

/// Named languages over a shared alphabet Σ (without '$').
class Environment {
public:
    Environment() = default;
    explicit Environment(Alphabet sigma) : sigma_(std::move(sigma)) {}

    const Alphabet& sigma() const { return sigma_; }
    /// Σ ∪ {$}.
    LetterSet letters() const { return sigma_.with_dollar(); }

    void add(LangPtr lang);
    /// Throws Error for an unknown name.
    LangPtr lookup(const std::string& name) const;
    bool contains(const std::string& name) const { return langs_.count(name) != 0; }
    const std::map<std::string, LangPtr>& languages() const { return langs_; }

private:
    Alphabet sigma_;
    std::map<std::string, LangPtr> langs_;
};

/// Line format:
///   alphabet 01
///   lang NAME finite: w1, w2        (ε written _)
///   lang NAME regex: (0|1)*$
///   lang NAME dpda: path/to/file
///   lang NAME cfg: path/to/file
///   lang NAME palindromes: 01 $
/// Relative paths resolve against `base`. Without an alphabet line Σ is the
/// set of letters the languages use.
Environment parse_environment(std::string_view text, const std::filesystem::path& base = {});
Environment load_environment(const std::filesystem::path& file);

std::string read_file(const std::filesystem::path& file);

}  // namespace pdlsep

#endif
