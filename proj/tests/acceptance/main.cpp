// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance [--only N] [--known-failures N,M,...]
//
// Exit status is 0 when every failing criterion is listed in
// --known-failures, 1 otherwise.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>

#include <CLI11.hpp>

#include "criteria.hpp"

using namespace pdlsep::acceptance;

namespace {

struct Criterion {
    int id;
    const char* title;
    double budget;  // seconds, 0 = none
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    int only = 0;
    std::vector<int> known;
    app.add_option("--only", only, "run a single criterion");
    app.add_option("--known-failures", known, "criteria whose failure is expected")->delimiter(',');
    CLI11_PARSE(app, argc, argv);

    const std::vector<Criterion> all{
        {1, "Lang soundness", kLangSoundnessSeconds, lang_soundness},
        {2, "ElimEW triple", kElimEwSeconds, elim_ew_triple},
        {3, "Measure order", 0, measure_order},
        {4, "DNF + completion", 0, dnf_completion},
        {5, "AG-elimination", 0, ag_elimination},
        {6, "Conjunctive EF-elimination", 0, wedge_elimination},
        {7, "Model checker cross-validation", 0, model_checker_cross},
        {8, "Pushdown reachability", 0, pushdown_reachability},
        {9, "Pumping", 0, pumping},
        {10, "Palindrome machinery", 0, palindrome_machinery},
        {11, "Goodness refutation at bound", kGoodnessSeconds, goodness_refutation},
        {12, "Extraction end-to-end", 0, extraction_end_to_end},
    };
    const std::set<int> expected(known.begin(), known.end());
    int unexpected = 0;
    for (const auto& c : all) {
        if (only && c.id != only) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.budget > 0 && secs >= c.budget) {
            o.pass = false;
            o.detail += (o.detail.empty() ? "" : "; ") + std::string("over the time budget");
        }
        std::printf("%s %2d %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.title, o.detail.c_str(), secs);
        std::fflush(stdout);
        if (!o.pass && !expected.count(c.id)) ++unexpected;
    }
    return unexpected ? 1 : 0;
}
