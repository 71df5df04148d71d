#ifndef PDLSEP_TOOLS_CLI_HPP
#define PDLSEP_TOOLS_CLI_HPP

#include <functional>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "pdlsep/environment.hpp"
#include "pdlsep/formula.hpp"
#include "pdlsep/lts.hpp"
#include "pdlsep/measure.hpp"
#include "pdlsep/type_search.hpp"
#include "pdlsep/verdict.hpp"

namespace pdlsep::cli {

using Json = nlohmann::ordered_json;

enum Exit : int { kTrue = 0, kFalse = 1, kUnknown = 2, kUsage = 64, kData = 65 };

/// Malformed command-line values that CLI11 cannot catch itself.
struct UsageError : Error {
    using Error::Error;
};

/// Values of `--bounds depth=D,branch=B,len=N`; absent keys fall back to
/// per-command defaults.
struct Bounds {
    std::optional<std::size_t> depth;
    std::optional<std::size_t> branch;
    std::optional<std::size_t> len;

    bool has_search() const { return depth || branch; }
    SearchBounds search(SearchBounds fallback = {}) const {
        return {depth.value_or(fallback.depth), branch.value_or(fallback.branching)};
    }
    std::size_t length(std::size_t fallback) const { return len.value_or(fallback); }
};

Bounds parse_bounds(const std::string& text);

/// Parsed global flags plus the loaded workspace and the report being built.
struct Context {
    std::string env_file;
    std::string bounds_text;
    bool json = false;
    int jobs = 1;

    Bounds bounds;
    Environment env;
    Json doc = Json::object();
    std::ostringstream text;

    /// Loads --env (an empty environment over Σ = {a,b} when absent) and
    /// parses --bounds.
    void prepare();
    Formula formula(const std::string& src) const { return parse_formula(src, env); }
    void verdict(const Verdict3& v);
    void emit() const;
};

using Action = std::function<int(Context&)>;

/// Adds a subcommand whose callback stores `run` for main to invoke.
CLI::App* command(CLI::App& app, Action& slot, const std::string& name, const std::string& about,
                  std::function<int(Context&)> run);

Json measure_json(const Measure& m);
/// Parses "{[2, ω], []}"; ω may also be written w or omega.
Measure parse_measure(const std::string& text);
Json words_json(const std::set<Word>& words);
std::string words_text(const std::set<Word>& words);
Json structure_json(const Structure& m);
int verdict_exit(const Verdict3& v);

void register_logic(CLI::App& app, Action& slot, Context& ctx);
void register_lang(CLI::App& app, Action& slot, Context& ctx);
void register_separation(CLI::App& app, Action& slot, Context& ctx);

}  // namespace pdlsep::cli

#endif
