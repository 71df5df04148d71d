#include <doctest.h>

#include "pdlsep/automaton.hpp"
#include "pdlsep/separation.hpp"
#include "support.hpp"

using namespace pdlsep;
using namespace pdlsep::test;

namespace {

const Environment& env() {
    static const Environment e = env_of(R"(
alphabet ab
lang L finite: ab$
lang P finite: ab$, b$
lang AB finite: ab
lang ADB finite: a$b, ab
lang D finite: $
lang PD palindromes: ab $
)");
    return e;
}

Formula F(const std::string& s) { return parse_formula(s, env()); }

}  // namespace

TEST_CASE("language of a formula") {
    const Alphabet ab = Alphabet::of("ab");
    CHECK(lang_of_formula(F("EF[L] true"), ab, 3) == std::set<Word>{"ab"});
    CHECK(lang_of_formula(F("false"), ab, 3).empty());
    Environment e01 = env_of("alphabet 01\nlang PD palindromes: 01 $\n");
    CHECK(lang_of_formula(parse_formula("EF[PD] true", e01), e01.sigma(), 2) ==
          std::set<Word>{"", "0", "1", "00", "11"});
}

TEST_CASE("dollar elimination") {
    ElimDollarResult r = elim_dollar(F("false"), env().lookup("ADB"), F("p"), env().letters(), {0, 1});
    CHECK(r.l1->enumerate(4) == std::set<Word>{"ab"});
    CHECK(r.l2->enumerate(4) == std::set<Word>{"a$"});
    CHECK(r.psi_satisfiable.is_refuted());
    ElimDollarResult d = elim_dollar(F("false"), env().lookup("D"), F("true"), env().letters(), {0, 1});
    CHECK(d.l1_empty);
    CHECK(d.l2->enumerate(2) == std::set<Word>{"$"});
    ElimDollarResult n = elim_dollar(F("false"), env().lookup("AB"), F("true"), env().letters(), {0, 1});
    CHECK(n.l2_empty);
}

TEST_CASE("witness family") {
    CHECK(witness_family("", 3) == std::vector<Word>{"", "11", "1110111"});
    CHECK(witness_family("0", 2) == std::vector<Word>{"0", "01100"});
    CHECK(witness_family("10", 1) == std::vector<Word>{"01"});
    for (const Word v : {"", "0", "10"}) {
        auto ws = witness_family(v, 10);
        for (std::size_t i = 0; i < ws.size(); ++i) {
            CHECK(is_palindrome(v + ws[i]));
            if (i) CHECK(is_prefix(ws[i - 1], ws[i]));
        }
        CHECK(limit_word_prefix(v, ws.back().size()) == ws.back());
    }
}

TEST_CASE("first new block") {
    // 11 1 0 1 11: blocks 1 0^0 1 (ends at 2) and 1 0^1 1 (ends at 5).
    auto b = first_new_block("1110111", 3);
    REQUIRE(b);
    CHECK(b->first == 1);
    CHECK(b->second == 5);
    CHECK_FALSE(first_new_block("0000", 0));
}

TEST_CASE("prefix order") {
    CHECK(prefix_ordered({"a", "aa", "aab"}));
    CHECK_FALSE(prefix_ordered({"a", "b"}));
    CHECK(prefix_ordered({}));
    CHECK(prefix_ordered({"ab"}));
}

TEST_CASE("bounded residuals") {
    BoundRResult a = bound_r_decompose("a", "aa", {"a", "aa", "aaa"});
    CHECK(a.valid);
    CHECK(a.uhat == "a");
    for (const auto& w : a.Uhat) CHECK(w.size() <= 2);
    BoundRResult b = bound_r_decompose("ab", "abba", {"bba", "babba", "bababba"});
    CHECK(b.valid);
    CHECK(b.uhat == "ba");
    for (const auto& e : b.per_word) {
        CHECK(e.residual.size() <= 4);
        Word rebuilt;
        for (std::size_t i = 0; i < e.n; ++i) rebuilt += b.uhat;
        CHECK(rebuilt + e.residual == e.w);
    }
    BoundRResult none = bound_r_decompose("a", "aa", {});
    CHECK(none.valid);
    CHECK(none.Uhat.empty());
    CHECK_FALSE(bound_r_decompose("ab", "abba", {"b"}).valid);
}

TEST_CASE("orthogonal words") {
    const LetterSet bits{'0', '1'};
    std::vector<Quad> q1{{"", "0", "1", ""}};
    CHECK(orthogonal_word(q1, bits) == "10");
    CHECK(orthogonal_valid(q1, "10", 8));
    CHECK_FALSE(orthogonal_valid(q1, "01", 8));
    std::vector<Quad> q2{{"", "0", "", ""}};
    CHECK(orthogonal_word(q2, bits) == "1");
    CHECK(orthogonal_word({}, bits) == "0");
    std::vector<Quad> q3{{"1", "01", "1", "0"}, {"", "1", "0", "11"}, {"00", "", "1", "1"}};
    Word w = orthogonal_word(q3, bits);
    CHECK(orthogonal_valid(q3, w, 8));
}

TEST_CASE("goodness check") {
    const Alphabet ab = Alphabet::of("ab");
    GoodDecomposition g{{{finite("AAA", {"a", "aa"}), RightFactor::epsilon(), std::make_pair(Word("a"), Word("aa")), ""}}};
    CHECK_FALSE(good_check(g, *finite("T", {"a", "aa"}), ab, 6).counterexample);

    const Alphabet bits = Alphabet::of("01");
    GoodDecomposition zeros{{{finite("Z", {"0", "00"}, "01"), RightFactor{std::set<Word>{"", "0", "00"}, nullptr, nullptr},
                              std::make_pair(Word("0"), Word("00")), ""}}};
    GoodCheckResult z = good_check(zeros, *pal("01"), bits, 4);
    REQUIRE(z.counterexample);
    CHECK(*z.counterexample == "");
    CHECK(z.counterexample_in_target);

    GoodDecomposition mixed{{{finite("M", {"01", "10"}, "01"), RightFactor::epsilon(),
                              std::make_pair(Word("01"), Word("10")), ""}}};
    GoodCheckResult m = good_check(mixed, *pal("01"), bits, 2);
    REQUIRE(m.counterexample);
    CHECK(*m.counterexample == "");
    // Among the non-empty words the union is caught on 01.
    auto lhs = mixed.enumerate(bits, 2);
    CHECK(lhs.count("01"));
    CHECK_FALSE(is_palindrome("01"));
}

TEST_CASE("extraction on a finite target") {
    ExtractOptions opts;
    opts.target = env().lookup("P");
    ExtractResult r = extract(F("EF[P] true"), env(), opts);
    REQUIRE(r.ok);
    CHECK(r.decomposition.enumerate(env().sigma(), 6) == std::set<Word>{"ab", "b"});
    for (const auto& d : r.descents) CHECK(d.strict);
}

TEST_CASE("extraction through a quotient") {
    Environment e = env_of("alphabet ab\nlang Q finite: a\nlang QB finite: b$\nlang T finite: ab$, b$\n");
    Formula f = parse_formula("(EF[Q] EF[QB] true | EF[QB] true)", e);
    ExtractOptions opts;
    opts.target = e.lookup("T");
    ExtractResult r = extract(f, e, opts);
    REQUIRE(r.ok);
    CHECK(r.decomposition.enumerate(e.sigma(), 6) == lang_of_formula(f, e.sigma(), 6));
    REQUIRE_FALSE(r.descents.empty());
    CHECK(r.descents[0].trail == "a");
    CHECK(r.descents[0].strict);
}

TEST_CASE("extraction with an infinite annotation") {
    Environment e = env_of("alphabet abc\nlang L regex: (a|b)c*$\n");
    Formula f = parse_formula("EF[L] true", e);
    ExtractOptions opts;
    opts.target = e.lookup("L");
    ExtractResult r = extract(f, e, opts);
    // The oracle cannot certify validity over an infinite annotation.
    if (r.ok) {
        REQUIRE(r.decomposition.pairs.size() == 1);
        CHECK(r.decomposition.strict());
        CHECK(r.decomposition.enumerate(e.sigma(), 5) == lang_of_formula(f, e.sigma(), 5));
    } else {
        CHECK_FALSE(r.failed_stage.empty());
    }
}

TEST_CASE("extraction of False") {
    ExtractResult r = extract(F("false"), env());
    REQUIRE(r.ok);
    CHECK(r.decomposition.pairs.empty());
    CHECK(r.decomposition.enumerate(env().sigma(), 5).empty());
}

TEST_CASE("separation demo") {
    Environment e = env_of("alphabet 01\nlang ALL regex: (0|1)*$\nlang EVEN palindromes: 01 $\n");
    DemoConfig cfg;
    cfg.formulas = {parse_formula("EF[ALL] true", e)};
    cfg.max_len = 6;
    DemoReport r = separation_demo(cfg, e);
    REQUIRE(r.formulas.size() == 1);
    if (r.formulas[0].extracted) {
        REQUIRE(r.formulas[0].counterexample);
        CHECK(r.formulas[0].counterexample->size() <= 2);
    }
    CHECK_THROWS_AS(separation_demo(DemoConfig{}, e), Error);
}
