#include <memory>

#include "cli.hpp"
#include "pdlsep/model_checker.hpp"
#include "pdlsep/transform.hpp"

namespace pdlsep::cli {

namespace {

Json dnf_json(const Dnf& d) {
    Json terms = Json::array();
    for (const auto& t : d.terms) terms.push_back(term_to_formula(t)->key);
    return terms;
}

void dnf_text(std::ostream& os, const Dnf& d) {
    for (const auto& t : d.terms) os << "  " << term_to_formula(t)->key << "\n";
}

ValidityOracle oracle_for(const Context& ctx) {
    const LetterSet letters = ctx.env.letters();
    const SearchBounds floor = ctx.bounds.search({0, 1});
    const int jobs = ctx.jobs;
    return [letters, floor, jobs](const Formula& g) { return validity_derived(g, letters, floor, jobs); };
}

Verdict3 decide(const Context& ctx, const Formula& f) {
    if (ctx.bounds.has_search()) {
        DerivedBounds d = derived_bounds(f);
        return validity(f, ctx.env.letters(), ctx.bounds.search({d.depth, d.branching}), ctx.jobs);
    }
    return validity_derived(f, ctx.env.letters(), {0, 1}, ctx.jobs);
}

void bounds_used(Context& ctx, const Formula& f) {
    DerivedBounds d = derived_bounds(f);
    SearchBounds b = ctx.bounds.search({d.depth, d.branching});
    if (!ctx.bounds.has_search()) b = {d.depth, std::max<std::size_t>(d.branching, 1)};
    ctx.doc["bounds"] = {{"depth", b.depth}, {"branching", b.branching}, {"exact", d.exact}};
}

}  // namespace

void register_logic(CLI::App& app, Action& slot, Context&) {
    auto o = std::make_shared<std::map<std::string, std::string>>();
    auto naive = std::make_shared<bool>(false);

    auto* mc = command(app, slot, "mc", "model-check a formula at the root of a structure", [o, naive](Context& ctx) {
        Structure m = parse_structure(read_file((*o)["lts"]));
        Formula f = ctx.formula((*o)["formula"]);
        const bool holds = check(m, f);
        auto sat = sat_states(m.lts, f);
        std::vector<std::string> names;
        for (int s = 0; s < m.lts.size(); ++s)
            if (sat[s]) names.push_back(m.lts.names[s]);
        ctx.doc["formula"] = f->key;
        ctx.doc["root"] = m.lts.names[m.root];
        ctx.doc["holds"] = holds;
        ctx.doc["sat"] = names;
        ctx.text << "formula: " << f->key << "\n" << "holds at " << m.lts.names[m.root] << ": "
                 << (holds ? "true" : "false") << "\n" << "satisfying states:";
        for (const auto& n : names) ctx.text << " " << n;
        ctx.text << "\n";
        if (*naive) {
            const std::size_t bound = ctx.bounds.length(12);
            try {
                const bool n = naive_check(m, f, bound);
                ctx.doc["naive"] = n;
                ctx.text << "naive (paths <= " << bound << "): " << (n ? "true" : "false")
                         << (n == holds ? "" : " MISMATCH") << "\n";
                if (n != holds) return int(kData);
            } catch (const BoundInsufficient& e) {
                ctx.doc["naive"] = nullptr;
                ctx.text << "naive (paths <= " << bound << "): undecided, " << e.what() << "\n";
            }
        }
        return int(holds ? kTrue : kFalse);
    });
    mc->add_option("--lts", (*o)["lts"], "structure file")->required();
    mc->add_option("--formula", (*o)["formula"], "formula")->required();
    mc->add_flag("--naive", *naive, "cross-check by path enumeration up to len");

    auto* eq = command(app, slot, "equiv", "bounded equivalence of two formulas", [o](Context& ctx) {
        Formula f = ctx.formula((*o)["f"]);
        Formula g = ctx.formula((*o)["g"]);
        Formula e = equivalence_formula(f, g);
        ctx.doc["f"] = f->key;
        ctx.doc["g"] = g->key;
        bounds_used(ctx, e);
        ctx.text << "f: " << f->key << "\n" << "g: " << g->key << "\n";
        Verdict3 v = decide(ctx, e);
        ctx.verdict(v);
        return verdict_exit(v);
    });
    eq->add_option("-f,--f", (*o)["f"], "first formula")->required();
    eq->add_option("-g,--g", (*o)["g"], "second formula")->required();

    auto* va = command(app, slot, "valid", "bounded validity", [o](Context& ctx) {
        Formula f = ctx.formula((*o)["formula"]);
        ctx.doc["formula"] = f->key;
        bounds_used(ctx, f);
        ctx.text << "formula: " << f->key << "\n";
        Verdict3 v = decide(ctx, f);
        ctx.verdict(v);
        return verdict_exit(v);
    });
    va->add_option("--formula", (*o)["formula"], "formula")->required();

    auto* mo = command(app, slot, "monotone", "bounded structural monotonicity probe", [o](Context& ctx) {
        Formula f = ctx.formula((*o)["formula"]);
        SearchBounds b = ctx.bounds.search({2, 2});
        MonotoneReport r = structurally_monotone_bounded(f, ctx.env.letters(), b);
        ctx.doc["formula"] = f->key;
        ctx.doc["bounds"] = {{"depth", b.depth}, {"branching", b.branching}};
        ctx.doc["verdict"] = to_string(r.verdict.kind);
        ctx.doc["evidence"] = r.verdict.evidence;
        ctx.text << "formula: " << f->key << "\n" << "verdict: " << to_string(r.verdict.kind) << "\n";
        if (!r.verdict.evidence.empty()) ctx.text << "evidence: " << r.verdict.evidence << "\n";
        if (r.model && r.extension) {
            ctx.doc["model"] = structure_json(*r.model);
            ctx.doc["extension"] = structure_json(*r.extension);
            ctx.text << "model:\n" << to_text(*r.model) << "extension (falsifies):\n" << to_text(*r.extension);
        }
        return verdict_exit(r.verdict);
    });
    mo->add_option("--formula", (*o)["formula"], "formula")->required();

    auto* ew = command(app, slot, "elim-ew", "remove ε from annotations", [o](Context& ctx) {
        Formula f = ctx.formula((*o)["formula"]);
        Formula g = elim_ew(f);
        const Measure before = measure(f);
        const Measure after = measure(g);
        const bool grew = measure_gt(after, before);
        ctx.doc["input"] = f->key;
        ctx.doc["result"] = g->key;
        ctx.doc["epsilon_free"] = is_epsilon_free(g);
        ctx.doc["measure_before"] = measure_json(before);
        ctx.doc["measure_after"] = measure_json(after);
        ctx.doc["measure_increased"] = grew;
        ctx.text << "input:  " << f->key << "\n" << "result: " << g->key << "\n"
                 << "epsilon-free: " << (is_epsilon_free(g) ? "yes" : "no") << "\n"
                 << "measure: " << to_string(before) << " -> " << to_string(after)
                 << (grew ? " (increased)" : "") << "\n";
        return int(kTrue);
    });
    ew->add_option("--formula", (*o)["formula"], "formula")->required();

    auto* dn = command(app, slot, "dnf", "disjunctive normal form over modal atoms", [o](Context& ctx) {
        Formula f = ctx.formula((*o)["formula"]);
        Dnf d = to_dnf(f);
        ctx.doc["input"] = f->key;
        ctx.doc["terms"] = dnf_json(d);
        ctx.doc["measure"] = measure_json(measure(d));
        ctx.text << "input: " << f->key << "\n" << d.terms.size() << " term(s):\n";
        dnf_text(ctx.text, d);
        ctx.text << "measure: " << to_string(measure(d)) << "\n";
        return int(kTrue);
    });
    dn->add_option("--formula", (*o)["formula"], "formula")->required();

    auto* co = command(app, slot, "complete", "add every valid EF-subset implication", [o](Context& ctx) {
        Formula f = ctx.formula((*o)["formula"]);
        Dnf d = to_dnf(f);
        CompletionReport r = complete(d, oracle_for(ctx));
        Json added = Json::array();
        for (const auto& s : r.added) added.push_back(term_to_formula(make_term({}, {}, s))->key);
        Json unknown = Json::array();
        for (const auto& s : r.unknown) unknown.push_back(term_to_formula(make_term({}, {}, s))->key);
        ctx.doc["input"] = d.str();
        ctx.doc["terms"] = dnf_json(r.result);
        ctx.doc["added"] = added;
        ctx.doc["unknown"] = unknown;
        ctx.doc["oracle_calls"] = r.oracle_calls;
        ctx.doc["shortcuts"] = r.shortcuts;
        ctx.text << "input: " << d.str() << "\n" << r.result.terms.size() << " term(s):\n";
        dnf_text(ctx.text, r.result);
        ctx.text << "added: " << added.size() << ", undecided: " << unknown.size() << ", oracle calls: "
                 << r.oracle_calls << ", shortcuts: " << r.shortcuts << "\n";
        for (const auto& u : unknown) ctx.text << "  undecided: " << u.get<std::string>() << "\n";
        return int(r.unknown.empty() ? kTrue : kUnknown);
    });
    co->add_option("--formula", (*o)["formula"], "formula")->required();

    auto* ag = command(app, slot, "elim-ag", "drop AG-parts of a DNF", [o](Context& ctx) {
        Formula f = ctx.formula((*o)["formula"]);
        Dnf d = to_dnf(f);
        ElimAgReport r = elim_ag(d, oracle_for(ctx));
        Json verdicts = Json::array();
        for (auto k : r.verdicts) verdicts.push_back(to_string(k));
        ctx.doc["input"] = d.str();
        ctx.doc["terms"] = dnf_json(r.result);
        ctx.doc["verdicts"] = verdicts;
        ctx.doc["partial"] = r.partial;
        ctx.text << "input: " << d.str() << "\n" << "AG-part verdicts:";
        for (auto k : r.verdicts) ctx.text << " " << to_string(k);
        ctx.text << "\n" << r.result.terms.size() << " term(s):\n";
        dnf_text(ctx.text, r.result);
        if (r.partial) ctx.text << "partial: undecided AG-parts kept unchanged\n";
        return int(r.partial ? kUnknown : kTrue);
    });
    ag->add_option("--formula", (*o)["formula"], "formula")->required();

    auto* me = command(app, slot, "measure", "termination measure of a formula", [o](Context& ctx) {
        Formula f = ctx.formula((*o)["formula"]);
        Measure m = measure(f);
        ctx.doc["formula"] = f->key;
        ctx.doc["measure"] = measure_json(m);
        ctx.text << to_string(m) << "\n";
        return int(kTrue);
    });
    me->add_option("--formula", (*o)["formula"], "formula")->required();

    auto* mc2 = command(app, slot, "measure-cmp", "compare two measures", [o](Context& ctx) {
        Measure l = parse_measure((*o)["left"]);
        Measure r = parse_measure((*o)["right"]);
        const bool gt = measure_gt(l, r);
        const bool lt = measure_gt(r, l);
        const char* rel = l == r ? "equal" : gt ? "greater" : lt ? "less" : "incomparable";
        ctx.doc["left"] = measure_json(l);
        ctx.doc["right"] = measure_json(r);
        ctx.doc["relation"] = rel;
        ctx.text << to_string(l) << " vs " << to_string(r) << ": " << rel << "\n";
        return int(gt ? kTrue : kFalse);
    });
    mc2->add_option("--left", (*o)["left"], "measure, e.g. {[2, ω]}")->required();
    mc2->add_option("--right", (*o)["right"], "measure")->required();
}

}  // namespace pdlsep::cli
