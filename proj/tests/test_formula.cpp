#include <doctest.h>

#include "pdlsep/model_checker.hpp"
#include "pdlsep/transform.hpp"
#include "support.hpp"

using namespace pdlsep;
using namespace pdlsep::test;

namespace {

const Environment& env() {
    static const Environment e = env_of(R"(
alphabet ab
lang L1 finite: ab
lang L finite: ab$
lang A finite: a
lang B finite: b
lang AB finite: ab
lang AOB finite: a, b
lang EA finite: _, a
lang EPS finite: _
lang NONE finite:
lang PAL palindromes: ab
)");
    return e;
}

Formula F(const std::string& s) { return parse_formula(s, env()); }

OmegaPlusOne fin(std::uint64_t n) { return OmegaPlusOne::fin(n); }

ValidityOracle oracle() {
    return [](const Formula& g) { return validity_derived(g, env().letters()); };
}

}  // namespace

TEST_CASE("formula parsing") {
    Formula f = F("EF[L1] true");
    CHECK(f->op == Op::EF);
    CHECK(f->lang.name == "L1");
    CHECK(f->body()->op == Op::True);
    Formula g = F("(p & !p)");
    CHECK(g->op == Op::And);
    CHECK(g->left->op == Op::Lit);
    CHECK_FALSE(g->left->negated);
    CHECK(g->right->negated);
    Formula h = F("AG[L] (true | false)");
    CHECK(h->op == Op::AG);
    CHECK(h->body()->op == Op::Or);
    CHECK(F("(a | b | c)")->key == "((a | b) | c)");
    CHECK_THROWS_AS(F("EF[ZZ] true"), Error);
    CHECK_THROWS_AS(F("(p & q"), ParseError);
}

TEST_CASE("negation normal form") {
    CHECK(nnf_negate(F("EF[A] (p & !q)"))->key == "AG[A] (!p | q)");
    CHECK(nnf_negate(F("true"))->key == "false");
    CHECK(equal(nnf_negate(nnf_negate(F("(AG[B] p | EF[A] !q)"))), F("(AG[B] p | EF[A] !q)")));
}

TEST_CASE("epsilon freeness") {
    CHECK(is_epsilon_free(F("EF[A] true")));
    CHECK_FALSE(is_epsilon_free(F("EF[EA] true")));
    CHECK_FALSE(is_epsilon_free(F("(p & AG[A] EF[EPS] true)")));
}

TEST_CASE("epsilon elimination") {
    CHECK(elim_ew(F("EF[EA] true"))->key == "(true | EF[EA-eps] true)");
    CHECK(elim_ew(F("AG[EA] false"))->key == "(false & AG[EA-eps] false)");
    CHECK(elim_ew(F("p"))->key == "p");
    // The modal part over L∖{ε} = ∅ is dropped.
    CHECK(elim_ew(F("EF[EPS] p"))->key == "p");
    CHECK(elim_ew(F("AG[EPS] p"))->key == "p");
    Formula g = elim_ew(F("AG[EA] EF[EA] p"));
    CHECK(is_epsilon_free(g));
    CHECK(equivalent_derived(g, F("AG[EA] EF[EA] p"), env().letters()).is_valid());
}

TEST_CASE("measure of formulas") {
    CHECK(measure(F("true")) == nil_measure());
    CHECK(measure(F("EF[AB] EF[PAL] true")) == Measure{{fin(2), OmegaPlusOne::omega()}});
    CHECK(measure(F("(p | !p)")) == nil_measure());
    CHECK(measure(F("(EF[A] p & AG[AOB] q)")) == Measure{{fin(1)}, {OmegaPlusOne::omega()}});
}

TEST_CASE("dnf") {
    Dnf d = to_dnf(F("((p | EF[A] true) & EF[B] true)"));
    REQUIRE(d.terms.size() == 2);
    std::set<std::string> keys;
    for (const auto& t : d.terms) keys.insert(term_to_formula(t)->key);
    CHECK(keys == std::set<std::string>{"(p & EF[B] true)", "(EF[A] true & EF[B] true)"});
    Dnf e = to_dnf(F("EF[A] true"));
    REQUIRE(e.terms.size() == 1);
    CHECK(e.terms[0].ef.size() == 1);
    Dnf t = to_dnf(F("true"));
    REQUIRE(t.terms.size() == 1);
    CHECK(t.terms[0].ef.empty());
    CHECK(t.terms[0].lits.empty());
    CHECK(to_dnf(F("false")).terms.empty());
}

TEST_CASE("dnf is equivalent and does not raise the measure") {
    for (const char* s : {"((p | EF[A] true) & (q | AG[B] p))", "(EF[A] EF[B] true & (AG[AOB] p | EF[AB] q))",
                          "((EF[A] true | EF[B] true) & (EF[A] p | EF[B] q))"}) {
        Formula f = F(s);
        Dnf d = to_dnf(f);
        CHECK(equivalent_derived(f, dnf_to_formula(d), env().letters()).is_valid());
        CHECK_FALSE(measure_gt(measure(d), measure(f)));
    }
}

TEST_CASE("completion") {
    // EF^a ⊤ alone implies (p ∧ EF^a ⊤) ∨ ¬p.
    Dnf d = to_dnf(F("((p & EF[A] true) | !p)"));
    CompletionReport r = complete(d, oracle());
    CHECK(r.unknown.empty());
    bool gained = false;
    for (const auto& t : r.result.terms)
        if (t.lits.empty() && t.ag.empty() && t.ef.size() == 1 && t.ef[0]->key == "EF[A] true") gained = true;
    CHECK(gained);

    Dnf plain = to_dnf(F("(p | q)"));
    CompletionReport none = complete(plain, oracle());
    CHECK(none.result.str() == plain.str());

    Dnf single = to_dnf(F("EF[A] true"));
    CompletionReport same = complete(single, oracle());
    CHECK(same.result.str() == single.str());
    CHECK(same.added.empty());

    CompletionReport twice = complete(r.result, oracle());
    CHECK(twice.result.str() == r.result.str());
}

TEST_CASE("AG elimination") {
    ElimAgReport vac = elim_ag(to_dnf(F("(AG[NONE] false & EF[A] true)")), oracle());
    REQUIRE(vac.result.terms.size() == 1);
    CHECK(term_to_formula(vac.result.terms[0])->key == "EF[A] true");

    ElimAgReport gone = elim_ag(to_dnf(F("(AG[A] false & EF[B] true)")), oracle());
    CHECK(gone.result.terms.empty());
    CHECK(gone.verdicts == std::vector{Verdict3::Kind::Refuted});

    ElimAgReport kept = elim_ag(to_dnf(F("EF[B] true")), oracle());
    CHECK(kept.result.str() == to_dnf(F("EF[B] true")).str());
}
