// Serial reference kernels against their OpenMP versions. The parallel
// benchmarks take the worker count as their argument.

#include <benchmark/benchmark.h>

#include "pdlsep/environment.hpp"
#include "pdlsep/kernels.hpp"

using namespace pdlsep;

namespace {

const Environment& env() {
    static const Environment e = parse_environment(R"(
alphabet abc
lang A finite: a
lang AB finite: ab, b
lang PD palindromes: abc $
lang R regex: (a|b)*c$
)");
    return e;
}

// Valid, so the brute-force scan visits every tree.
Formula valid_formula() { return parse_formula("(EF[A] p | AG[A] !p)", env()); }

const LetterSet kLetters{'a', 'b', 'c'};
const SearchBounds kBounds{2, 2};

std::vector<Structure> paths() {
    std::vector<Structure> out;
    for (const auto& w : all_words(kLetters, 7)) out.push_back(path_structure(w + "$"));
    return out;
}

std::vector<Formula> formulas() {
    return {parse_formula("EF[PD] true", env()), parse_formula("EF[R] true", env()),
            parse_formula("AG[AB] EF[A] true", env())};
}

void BM_countermodel_serial(benchmark::State& state) {
    Formula f = valid_formula();
    for (auto _ : state) benchmark::DoNotOptimize(brute_countermodel_serial(f, kLetters, kBounds));
}

void BM_countermodel_parallel(benchmark::State& state) {
    Formula f = valid_formula();
    const int jobs = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(brute_countermodel_parallel(f, kLetters, kBounds, jobs));
}

void BM_lang_serial(benchmark::State& state) {
    Formula f = parse_formula("EF[PD] true", env());
    for (auto _ : state) benchmark::DoNotOptimize(lang_of_formula_serial(f, env().sigma(), 9));
}

void BM_lang_parallel(benchmark::State& state) {
    Formula f = parse_formula("EF[PD] true", env());
    const int jobs = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(lang_of_formula_parallel(f, env().sigma(), 9, jobs));
}

void BM_check_all_serial(benchmark::State& state) {
    auto ms = paths();
    auto fs = formulas();
    for (auto _ : state) benchmark::DoNotOptimize(check_all_serial(ms, fs));
}

void BM_check_all_parallel(benchmark::State& state) {
    auto ms = paths();
    auto fs = formulas();
    const int jobs = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(check_all_parallel(ms, fs, jobs));
}

}  // namespace

BENCHMARK(BM_countermodel_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_countermodel_parallel)->RangeMultiplier(2)->Range(1, 8)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_lang_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_lang_parallel)->RangeMultiplier(2)->Range(1, 8)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_check_all_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_check_all_parallel)->RangeMultiplier(2)->Range(1, 8)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
