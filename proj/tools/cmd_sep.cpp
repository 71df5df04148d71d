#include <memory>

#include "cli.hpp"
#include "pdlsep/separation.hpp"

namespace pdlsep::cli {

namespace {

Json pair_json(const GoodPair& p) {
    Json j = {{"left", p.left->name()}, {"right", p.right.describe()}};
    if (p.evidence)
        j["evidence"] = Json::array({show_word(p.evidence->first), show_word(p.evidence->second)});
    else
        j["evidence"] = nullptr;
    if (!p.note.empty()) j["note"] = p.note;
    return j;
}

void pair_text(std::ostream& os, const GoodPair& p) {
    os << "  " << p.left->name() << " . " << p.right.describe();
    if (p.evidence) os << "  evidence " << show_word(p.evidence->first) << ", " << show_word(p.evidence->second);
    if (!p.note.empty()) os << "  (" << p.note << ")";
    os << "\n";
}

Word opt_word(const std::string& s) { return s == "_" ? Word() : s; }

}  // namespace

void register_separation(CLI::App& app, Action& slot, Context&) {
    auto o = std::make_shared<std::map<std::string, std::string>>();
    auto many = std::make_shared<std::map<std::string, std::vector<std::string>>>();
    auto n = std::make_shared<std::size_t>(0);

    auto* ex = command(app, slot, "extract", "extract a good decomposition from a formula", [o, n](Context& ctx) {
        Formula f = ctx.formula((*o)["formula"]);
        ExtractOptions opts;
        opts.jobs = ctx.jobs;
        opts.floor = ctx.bounds.search({0, 1});
        if (*n) opts.max_depth = *n;
        if (!(*o)["target"].empty()) opts.target = ctx.env.lookup((*o)["target"]);
        ExtractResult r;
        bool breach = false;
        try {
            r = extract(f, ctx.env, opts);
        } catch (const InvariantBreach& e) {
            breach = true;
            r.failed_stage = "descent";
            r.reason = e.what();
        }
        Json stages = Json::array();
        ctx.text << "formula: " << f->key << "\n";
        for (const auto& s : r.stages) {
            Json j = {{"stage", s.stage}, {"formula", s.formula}, {"measure", s.measure},
                      {"measure_bounded", s.measure_bounded}};
            if (!s.notes.empty()) j["notes"] = s.notes;
            stages.push_back(std::move(j));
            ctx.text << "[" << s.stage << "] " << s.formula << "  μ = " << s.measure
                     << (s.measure_bounded ? "" : "  (measure increased)") << "\n";
            for (const auto& note : s.notes) ctx.text << "    " << note << "\n";
        }
        Json descents = Json::array();
        for (const auto& d : r.descents) {
            descents.push_back({{"trail", show_word(d.trail)}, {"before", d.before}, {"after", d.after},
                                {"strict", d.strict}});
            ctx.text << "descent at " << show_word(d.trail) << ": " << d.before << " > " << d.after << " "
                     << (d.strict ? "strict" : "NOT strict") << "\n";
        }
        ctx.doc["formula"] = f->key;
        ctx.doc["ok"] = r.ok;
        ctx.doc["stages"] = stages;
        ctx.doc["descents"] = descents;
        if (!r.ok) {
            ctx.doc["failed_stage"] = r.failed_stage;
            ctx.doc["reason"] = r.reason;
            ctx.text << "stopped at " << r.failed_stage << ": " << r.reason << "\n";
            return int(breach ? kFalse : kUnknown);
        }
        Json pairs = Json::array();
        ctx.text << "decomposition (" << r.decomposition.pairs.size() << " pair(s)):\n";
        for (const auto& p : r.decomposition.pairs) {
            pairs.push_back(pair_json(p));
            pair_text(ctx.text, p);
        }
        ctx.doc["pairs"] = pairs;
        const std::size_t len = ctx.bounds.length(8);
        auto lhs = r.decomposition.enumerate(ctx.env.sigma(), len);
        auto rhs = lang_of_formula(f, ctx.env.sigma(), len, ctx.jobs);
        ctx.doc["bounded_check"] = {{"len", len}, {"equal", lhs == rhs}, {"words", words_json(lhs)}};
        ctx.text << "decomposition " << (lhs == rhs ? "equals" : "differs from") << " Lang(formula) up to length "
                 << len << "\n";
        return int(lhs == rhs ? kTrue : kFalse);
    });
    ex->add_option("--formula", (*o)["formula"], "formula equivalent to EF[P$] true")->required();
    ex->add_option("--target", (*o)["target"], "name of P$ in the environment");
    ex->add_option("--max-depth", *n, "longest quotient trail");

    auto* wf = command(app, slot, "witness-family", "prefix-ordered palindrome witnesses", [o, n](Context& ctx) {
        const Word v = opt_word((*o)["v"]);
        auto ws = witness_family(v, *n ? *n : 3);
        Json arr = Json::array();
        for (const auto& w : ws) {
            arr.push_back(show_word(w));
            ctx.text << show_word(w) << "\n";
        }
        ctx.doc["v"] = show_word(v);
        ctx.doc["words"] = arr;
        return int(kTrue);
    });
    wf->add_option("--v", (*o)["v"], "prefix v (empty or _ for ε)")->required();
    wf->add_option("--count", *n, "number of witnesses");

    auto* ow = command(app, slot, "orthogonal", "word escaping every u0 u1^j u2^k u3", [o, many, n](Context& ctx) {
        std::vector<Quad> quads;
        for (const auto& q : (*many)["quad"]) {
            std::vector<Word> parts;
            std::istringstream is(q);
            for (std::string p; std::getline(is, p, ',');) parts.push_back(opt_word(p));
            if (parts.size() != 4) throw UsageError("--quad is u0,u1,u2,u3 with _ for ε, got '" + q + "'");
            quads.emplace_back(parts[0], parts[1], parts[2], parts[3]);
        }
        const std::string& ls = (*o)["letters"];
        LetterSet letters(ls.begin(), ls.end());
        Word w = orthogonal_word(quads, letters);
        const std::size_t slack = *n ? *n : 8;
        const bool ok = orthogonal_valid(quads, w, slack);
        ctx.doc["word"] = show_word(w);
        ctx.doc["slack"] = slack;
        ctx.doc["brute_force_ok"] = ok;
        ctx.text << "w = " << show_word(w) << "\n" << "brute force (slack " << slack << "): "
                 << (ok ? "no u0 u1^j u2^k u3 extends w" : "w is a prefix of some u0 u1^j u2^k u3") << "\n";
        return int(ok ? kTrue : kFalse);
    });
    ow->add_option("--quad", (*many)["quad"], "u0,u1,u2,u3")->required();
    ow->add_option("--letters", (*o)["letters"], "alphabet")->default_val("01");
    ow->add_option("--slack", *n, "extra length for the brute-force check");

    auto* gc = command(app, slot, "good-check", "compare a decomposition with a target language", [o, many](Context& ctx) {
        GoodDecomposition g;
        for (const auto& arg : (*many)["pair"]) {
            auto colon = arg.find(':');
            if (colon == std::string::npos) throw UsageError("--pair is LEFT:RIGHT, got '" + arg + "'");
            GoodPair p;
            p.left = ctx.env.lookup(arg.substr(0, colon));
            const std::string right = arg.substr(colon + 1);
            p.right = right == "_" ? RightFactor::epsilon() : RightFactor{std::nullopt, nullptr, ctx.env.lookup(right)};
            p.evidence = p.left->two_words();
            g.pairs.push_back(std::move(p));
        }
        LangPtr target = (*o)["target"].empty()
                             ? Language::make("Pal", ctx.env.sigma().letters, PalLang{ctx.env.sigma().letters, false})
                             : ctx.env.lookup((*o)["target"]);
        const std::size_t len = ctx.bounds.length(10);
        GoodCheckResult r = good_check(g, *target, ctx.env.sigma(), len);
        Json pairs = Json::array();
        for (const auto& p : g.pairs) pairs.push_back(pair_json(p));
        ctx.doc["target"] = target->name();
        ctx.doc["len"] = len;
        ctx.doc["pairs"] = pairs;
        ctx.doc["structural_ok"] = r.structural_ok;
        ctx.doc["problems"] = r.problems;
        ctx.text << "target " << target->name() << ", length <= " << len << "\n";
        for (const auto& p : g.pairs) pair_text(ctx.text, p);
        for (const auto& p : r.problems) ctx.text << "problem: " << p << "\n";
        if (r.counterexample) {
            ctx.doc["counterexample"] = show_word(*r.counterexample);
            ctx.doc["counterexample_in_target"] = r.counterexample_in_target;
            ctx.text << "counterexample " << show_word(*r.counterexample) << " ("
                     << (r.counterexample_in_target ? "in target only" : "in decomposition only") << ")\n";
            return int(kFalse);
        }
        ctx.doc["counterexample"] = nullptr;
        ctx.text << "agrees with the target up to length " << len << "\n";
        return int(kTrue);
    });
    gc->add_option("--pair", (*many)["pair"], "LEFT:RIGHT language names, _ for {ε}")->required();
    gc->add_option("--target", (*o)["target"], "target language (palindromes over Σ by default)");

    auto* pd = command(app, slot, "pal-demo", "bounded palindrome separation demo", [o, many](Context& ctx) {
        DemoConfig cfg;
        for (const auto& f : (*many)["formula"]) cfg.formulas.push_back(ctx.formula(f));
        for (const auto& arg : (*many)["dpda"]) {
            auto eq = arg.find('=');
            if (eq == std::string::npos) throw UsageError("--dpda is NAME=FILE, got '" + arg + "'");
            cfg.dpdas.emplace_back(arg.substr(0, eq), parse_dpda(read_file(arg.substr(eq + 1))));
        }
        cfg.v = opt_word((*o)["v"]);
        cfg.max_len = ctx.bounds.length(10);
        cfg.jobs = ctx.jobs;
        DemoReport r = separation_demo(cfg, ctx.env);
        Json fs = Json::array();
        for (const auto& e : r.formulas) {
            Json j = {{"formula", e.formula}, {"extracted", e.extracted}};
            if (!e.extracted) j["reason"] = e.reason;
            j["counterexample"] = e.counterexample ? Json(show_word(*e.counterexample)) : Json(nullptr);
            if (e.counterexample) j["in_palindromes"] = e.in_palindromes;
            fs.push_back(std::move(j));
        }
        Json ps = Json::array();
        for (const auto& e : r.pumps) {
            Json j = {{"name", e.name}, {"ok", e.ok}};
            if (e.ok) {
                j["u0"] = show_word(e.pump.u0);
                j["u1"] = show_word(e.pump.u1);
                j["kappa"] = e.kappa;
                j["ell"] = e.ell;
            } else {
                j["reason"] = e.reason;
            }
            ps.push_back(std::move(j));
        }
        ctx.doc["formulas"] = fs;
        ctx.doc["dpdas"] = ps;
        ctx.doc["note"] = "bounded evidence only, not a proof";
        ctx.text << r.text;
        return int(kTrue);
    });
    pd->add_option("--formula", (*many)["formula"], "candidate formula");
    pd->add_option("--dpda", (*many)["dpda"], "NAME=FILE");
    pd->add_option("--v", (*o)["v"], "prefix v for the limit word")->default_val("_");
}

}  // namespace pdlsep::cli
