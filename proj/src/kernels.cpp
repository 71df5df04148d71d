#include "pdlsep/kernels.hpp"

#include <algorithm>
#include <limits>

#include "pdlsep/model_checker.hpp"

namespace pdlsep {

namespace {

std::vector<std::string> prop_list(const Formula& f) {
    auto ps = props(f);
    return {ps.begin(), ps.end()};
}

}  // namespace

std::optional<TreePtr> brute_countermodel_serial(const Formula& f, const LetterSet& letters, SearchBounds bounds) {
    auto pv = prop_list(f);
    for (const auto& t : enum_trees(letters, bounds.depth, bounds.branching, pv.size()))
        if (!check(tree_structure(t, pv), f)) return t;
    return std::nullopt;
}

std::optional<TreePtr> brute_countermodel_parallel(const Formula& f, const LetterSet& letters, SearchBounds bounds,
                                                   int jobs) {
    auto pv = prop_list(f);
    const auto trees = enum_trees(letters, bounds.depth, bounds.branching, pv.size());
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(trees.size());
    std::ptrdiff_t best = std::numeric_limits<std::ptrdiff_t>::max();
#pragma omp parallel for schedule(dynamic, 64) num_threads(std::max(1, jobs)) reduction(min : best)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        if (i < best && !check(tree_structure(trees[i], pv), f)) best = i;
    if (best == std::numeric_limits<std::ptrdiff_t>::max()) return std::nullopt;
    return trees[best];
}

std::set<Word> lang_of_formula_serial(const Formula& f, const Alphabet& sigma, std::size_t max_len) {
    std::set<Word> out;
    for (const auto& w : all_words(sigma.letters, max_len))
        if (check(path_structure(w + kDollar), f)) out.insert(w);
    return out;
}

std::set<Word> lang_of_formula_parallel(const Formula& f, const Alphabet& sigma, std::size_t max_len, int jobs) {
    const auto words = all_words(sigma.letters, max_len);
    std::vector<char> hit(words.size(), 0);
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(words.size());
#pragma omp parallel for schedule(dynamic, 32) num_threads(std::max(1, jobs))
    for (std::ptrdiff_t i = 0; i < n; ++i) hit[i] = check(path_structure(words[i] + kDollar), f);
    std::set<Word> out;
    for (std::size_t i = 0; i < words.size(); ++i)
        if (hit[i]) out.insert(words[i]);
    return out;
}

std::vector<std::vector<bool>> check_all_serial(const std::vector<Structure>& structures,
                                                const std::vector<Formula>& formulas) {
    std::vector<std::vector<bool>> out(structures.size(), std::vector<bool>(formulas.size()));
    for (std::size_t i = 0; i < structures.size(); ++i)
        for (std::size_t j = 0; j < formulas.size(); ++j) out[i][j] = check(structures[i], formulas[j]);
    return out;
}

std::vector<std::vector<bool>> check_all_parallel(const std::vector<Structure>& structures,
                                                  const std::vector<Formula>& formulas, int jobs) {
    // vector<bool> rows share words, so workers write bytes and copy after.
    const std::size_t cols = formulas.size();
    std::vector<char> cells(structures.size() * cols, 0);
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(cells.size());
#pragma omp parallel for schedule(dynamic, 16) num_threads(std::max(1, jobs))
    for (std::ptrdiff_t k = 0; k < n; ++k) cells[k] = check(structures[k / cols], formulas[k % cols]);
    std::vector<std::vector<bool>> out(structures.size(), std::vector<bool>(cols));
    for (std::size_t i = 0; i < structures.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) out[i][j] = cells[i * cols + j];
    return out;
}

}  // namespace pdlsep
