#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "pdlsep/separation.hpp"

namespace pdlsep {

namespace {

struct StageAbort {
    std::string stage;
    std::string reason;
};

struct Disjunct {
    LangPtr lang;
    Formula body;
    bool dollar = false;  // lang ⊆ Σ*$ and body = True
};

class Extractor {
public:
    Extractor(const Environment& env, const ExtractOptions& opts, ExtractResult& res)
        : env_(env), opts_(opts), res_(res), letters_(env.letters()) {}

    GoodDecomposition run(const Formula& f, const LangPtr& target, const Word& trail, std::size_t depth) {
        if (depth > opts_.max_depth) throw StageAbort{"recursion", "quotient trail longer than " +
                                                                       std::to_string(opts_.max_depth)};
        if (!props(f).empty()) throw StageAbort{"input", "formula mentions propositions"};
        const std::string at = trail.empty() ? "" : " [" + trail + "]";
        Measure m0 = measure(f);
        log("input" + at, f->key, m0, m0);

        Formula f1 = elim_ew(f);
        Measure m1 = measure(f1);
        log("elim-ew" + at, f1->key, m1, m0);

        Dnf d = to_dnf(f1);
        Measure m2 = measure(d);
        log("dnf" + at, d.str(), m2, m1);

        CompletionReport c = complete(d, oracle());
        if (!c.unknown.empty())
            throw StageAbort{"complete" + at, std::to_string(c.unknown.size()) + " subset implication(s) undecided"};
        Measure m3 = measure(c.result);
        log("complete" + at, c.result.str(), m3, m2)
            .notes.push_back(std::to_string(c.added.size()) + " subset(s) added, " + std::to_string(c.oracle_calls) +
                             " oracle call(s)");

        ElimAgReport a = elim_ag(c.result, oracle());
        if (a.partial)
            throw StageAbort{"elim-ag" + at, std::to_string(a.undecided.size()) + " AG-part(s) undecided"};
        Measure m4 = measure(a.result);
        log("elim-ag" + at, a.result.str(), m4, m3);

        const Formula goal = target ? f_ef(target, f_true()) : f;
        std::vector<Formula> terms;
        for (const auto& t : a.result.terms) {
            if (t.ef.empty()) throw StageAbort{"elim-wedge-ef" + at, "a term is valid, so the input is not EF^{P$} True"};
            terms.push_back(term_to_formula(t));
        }
        for (std::size_t i = 0; i < terms.size(); ++i) {
            const Term& t = a.result.terms[i];
            if (t.ef.size() < 2) continue;
            std::vector<Formula> rest;
            for (std::size_t j = 0; j < terms.size(); ++j)
                if (j != i) rest.push_back(terms[j]);
            Formula delta = f_or_all(rest);
            DerivedBounds b = derived_bounds(equivalence_formula(goal, f_or(delta, terms[i])));
            SearchBounds sb{std::max(b.depth, opts_.floor.depth), std::max(b.branching, opts_.floor.branching)};
            WedgeReport w = elim_wedge_ef(delta, t.ef, goal, letters_, sb, opts_.jobs);
            if (w.hypothesis) throw StageAbort{"elim-wedge-ef" + at, "hypothesis equation refuted"};
            if (!w.index) throw StageAbort{"elim-wedge-ef" + at, "no conjunct settles the equation"};
            terms[i] = t.ef[*w.index];
        }
        {
            std::set<std::string> seen;
            std::vector<Formula> uniq;
            for (const auto& e : terms)
                if (seen.insert(e->key).second) uniq.push_back(e);
            terms = std::move(uniq);
        }
        Formula f5 = f_or_all(terms);
        Measure m5 = measure(f5);
        log("elim-wedge-ef" + at, f5->key, m5, m4);

        std::vector<Disjunct> parts;
        for (std::size_t i = 0; i < terms.size(); ++i) {
            const Formula& e = terms[i];
            std::vector<Formula> rest;
            for (std::size_t j = 0; j < terms.size(); ++j)
                if (j != i) rest.push_back(terms[j]);
            DerivedBounds b = derived_bounds(nnf_negate(e->body()));
            SearchBounds sb{std::max(b.depth, opts_.floor.depth), std::max(b.branching, opts_.floor.branching)};
            ElimDollarResult r = elim_dollar(f_or_all(rest), e->lang.lang, e->body(), letters_, sb, opts_.jobs);
            if (!r.psi_satisfiable.is_refuted())
                throw StageAbort{"elim-dollar" + at, "body of " + e->key + " not shown satisfiable (" +
                                                         r.psi_satisfiable.evidence + ")"};
            if (!r.l1_empty) parts.push_back({r.l1, e->body(), false});
            if (!r.l2_empty) parts.push_back({r.l2, f_true(), true});
        }
        std::vector<Formula> shaped;
        for (const auto& p : parts) shaped.push_back(f_ef(p.lang, p.body));
        const Formula phi = f_or_all(shaped);
        const Measure m6 = measure(phi);
        log("elim-dollar" + at, phi->key, m6, m5);

        GoodDecomposition out;
        std::vector<std::size_t> plus;
        std::map<Letter, std::vector<std::size_t>> minus;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            const auto& p = parts[i];
            if (p.lang->norm().is_omega()) {
                plus.push_back(i);
                GoodPair g;
                if (p.dollar) {
                    g.left = p.lang->right_quotient(kDollar);
                    g.right = RightFactor::epsilon();
                } else {
                    g.left = p.lang;
                    g.right = RightFactor{std::nullopt, p.body, nullptr};
                }
                g.evidence = g.left->two_words();
                out.pairs.push_back(std::move(g));
                continue;
            }
            Word w = *p.lang->shortest_word();
            if (p.dollar) {
                GoodPair g{p.lang->right_quotient(kDollar), RightFactor::epsilon(), std::nullopt,
                           "$-terminated singleton"};
                out.pairs.push_back(std::move(g));
                continue;
            }
            minus[w.front()].push_back(i);
        }

        for (const auto& [letter, own] : minus) {
            std::vector<Formula> qs;
            for (auto i : plus) {
                LangPtr q = parts[i].lang->left_quotient(letter);
                if (!q->is_empty()) qs.push_back(f_ef(q, parts[i].body));
            }
            for (auto i : own) qs.push_back(f_ef(parts[i].lang->left_quotient(letter), parts[i].body));
            Formula phi_a = f_or_all(qs);
            Measure ma = measure(phi_a);
            DescentLog dl{trail + letter, to_string(m6), to_string(ma), measure_gt(m6, ma)};
            res_.descents.push_back(dl);
            if (!dl.strict)
                throw InvariantBreach("measure does not decrease from " + dl.before + " to " + dl.after +
                                      " at trail " + show_word(dl.trail));
            GoodDecomposition sub =
                run(phi_a, target ? target->left_quotient(letter) : nullptr, trail + letter, depth + 1);
            for (auto& g : sub.pairs) {
                g.left = g.left->prepend(Word(1, letter));
                if (g.evidence) g.evidence = std::make_pair(letter + g.evidence->first, letter + g.evidence->second);
                out.pairs.push_back(std::move(g));
            }
        }
        return out;
    }

private:
    ValidityOracle oracle() const {
        return [this](const Formula& g) { return validity_derived(g, letters_, opts_.floor, opts_.jobs); };
    }

    StageLog& log(std::string stage, std::string formula, const Measure& after, const Measure& before) {
        res_.stages.push_back({std::move(stage), std::move(formula), to_string(after), !measure_gt(after, before), {}});
        return res_.stages.back();
    }

    const Environment& env_;
    const ExtractOptions& opts_;
    ExtractResult& res_;
    LetterSet letters_;
};

}  // namespace

ExtractResult extract(const Formula& f, const Environment& env, const ExtractOptions& opts) {
    ExtractResult res;
    try {
        res.decomposition = Extractor(env, opts, res).run(f, opts.target, "", 0);
        res.ok = true;
    } catch (const StageAbort& a) {
        res.failed_stage = a.stage;
        res.reason = a.reason;
    }
    return res;
}

DemoReport separation_demo(const DemoConfig& config, const Environment& env) {
    if (config.formulas.empty() && config.dpdas.empty()) throw Error("separation demo needs a non-empty catalog");
    DemoReport rep;
    std::ostringstream os;
    const Alphabet& sigma = env.sigma();
    LangPtr pal = Language::make("Pal", sigma.letters, PalLang{sigma.letters, false});
    LangPtr pal_dollar = Language::make("Pal$", env.letters(), PalLang{sigma.letters, true});
    os << "reference formula: " << f_ef(pal_dollar, f_true())->key << "\n";

    for (const auto& f : config.formulas) {
        DemoReport::FormulaEntry e;
        e.formula = f->key;
        ExtractOptions opts;
        opts.jobs = config.jobs;
        ExtractResult x = extract(f, env, opts);
        e.extracted = x.ok;
        os << "candidate " << f->key << ": ";
        if (!x.ok) {
            e.reason = x.failed_stage + ": " + x.reason;
            os << "extraction stopped at " << e.reason << "\n";
        } else {
            GoodCheckResult g = good_check(x.decomposition, *pal, sigma, config.max_len);
            e.counterexample = g.counterexample;
            e.in_palindromes = g.counterexample_in_target;
            os << x.decomposition.pairs.size() << " pair(s); ";
            if (g.counterexample)
                os << "differs from Pal on " << show_word(*g.counterexample) << " (length "
                   << g.counterexample->size() << ", " << (g.counterexample_in_target ? "in Pal only" : "not in Pal")
                   << ")\n";
            else
                os << "agrees with Pal up to length " << config.max_len << "\n";
        }
        rep.formulas.push_back(std::move(e));
    }

    for (const auto& [name, d] : config.dpdas) {
        DemoReport::PumpEntry e;
        e.name = name;
        const Word v = config.v;
        try {
            const Word limit = limit_word_prefix(v, (std::size_t{1} << 14) + 64);
            e.pump = pump_decompose(d, [&](std::size_t i) { return limit[i]; });
            const std::size_t start = e.pump.u0.size() + e.pump.u1.size();
            Word w = limit_word_prefix(v, 4 * start + 256);
            if (auto blk = first_new_block(w, start)) {
                e.kappa = blk->first;
                e.ell = blk->second;
            }
            e.ok = true;
            os << "dpda " << name << ": u0 = " << show_word(e.pump.u0) << ", u1 = " << show_word(e.pump.u1)
               << "; first new block 1 0^" << e.kappa << " 1 ends at " << e.ell << "\n";
        } catch (const Error& err) {
            e.reason = err.what();
            os << "dpda " << name << ": " << e.reason << "\n";
        }
        rep.pumps.push_back(std::move(e));
    }
    os << "bounded evidence only, not a proof\n";
    rep.text = os.str();
    return rep;
}

}  // namespace pdlsep
