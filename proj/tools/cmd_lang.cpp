#include <memory>

#include "cli.hpp"
#include "pdlsep/pushdown.hpp"
#include "pdlsep/separation.hpp"

namespace pdlsep::cli {

namespace {

void describe_lang(Context& ctx, const std::string& key, const LangPtr& l, std::size_t len) {
    auto words = l->enumerate(len);
    ctx.doc[key] = {{"name", l->name()}, {"kind", l->kind()}, {"words", words_json(words)}};
    ctx.text << key << ": " << l->name() << " (" << l->kind() << ")\n"
             << "  words up to length " << len << ": " << words_text(words) << "\n";
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    for (std::string t; is >> t;) out.push_back(t);
    return out;
}

std::string state_name(const PAutomaton& a, const NamedPds& n, int s) {
    return s < a.control ? n.state_names[s] : "s" + std::to_string(s);
}

Json automaton_json(const PAutomaton& a, const NamedPds& n) {
    Json trans = Json::array();
    for (const auto& [s, x, t] : a.trans)
        trans.push_back(Json::array({state_name(a, n, s), n.symbol_names[x], state_name(a, n, t)}));
    Json finals = Json::array();
    for (int f : a.finals) finals.push_back(state_name(a, n, f));
    return {{"states", a.states}, {"control", a.control}, {"trans", trans}, {"finals", finals}};
}

}  // namespace

void register_lang(CLI::App& app, Action& slot, Context&) {
    auto o = std::make_shared<std::map<std::string, std::string>>();
    auto n = std::make_shared<std::size_t>(5);

    auto* qu = command(app, slot, "quotient", "left or right quotient by a letter", [o](Context& ctx) {
        LangPtr l = ctx.env.lookup((*o)["lang"]);
        const std::string& letter = (*o)["letter"];
        const std::string& side = (*o)["side"];
        if (letter.size() != 1) throw UsageError("--letter takes a single letter");
        if (side != "left" && side != "right") throw UsageError("--side is left or right");
        LangPtr q = side == "left" ? l->left_quotient(letter[0]) : l->right_quotient(letter[0]);
        const std::size_t len = ctx.bounds.length(6);
        ctx.doc["side"] = side;
        ctx.doc["letter"] = letter;
        describe_lang(ctx, "input", l, len);
        describe_lang(ctx, "result", q, len);
        return int(kTrue);
    });
    qu->add_option("--lang", (*o)["lang"], "language name")->required();
    qu->add_option("--letter", (*o)["letter"], "quotient letter")->required();
    qu->add_option("--side", (*o)["side"], "left or right")->default_val("left");

    auto* sd = command(app, slot, "split-dollar", "split L into L ∩ Σ* and its $-terminated prefixes",
                       [o](Context& ctx) {
                           LangPtr l = ctx.env.lookup((*o)["lang"]);
                           auto [l1, l2] = l->dollar_split();
                           const std::size_t len = ctx.bounds.length(6);
                           describe_lang(ctx, "input", l, len);
                           describe_lang(ctx, "dollar_free", l1, len);
                           describe_lang(ctx, "dollar_prefixes", l2, len);
                           return int(kTrue);
                       });
    sd->add_option("--lang", (*o)["lang"], "language name")->required();

    auto* ps = command(app, slot, "prestar", "pre* saturation of a pushdown system", [o](Context& ctx) {
        NamedPds pds = parse_pds(read_file((*o)["pds"]));
        PAutomaton target = parse_pautomaton(read_file((*o)["target"]), pds);
        const std::string& wl = (*o)["worklist"];
        if (wl != "fifo" && wl != "lifo") throw UsageError("--worklist is fifo or lifo");
        PAutomaton pre = prestar(pds.pds, target, wl == "fifo" ? Worklist::Fifo : Worklist::Lifo);
        PAutomaton other = prestar(pds.pds, target, wl == "fifo" ? Worklist::Lifo : Worklist::Fifo);
        const bool agree = pre.trans == other.trans && pre.finals == other.finals;
        ctx.doc["worklist"] = wl;
        ctx.doc["automaton"] = automaton_json(pre, pds);
        ctx.doc["worklists_agree"] = agree;
        ctx.text << "pre* (" << wl << "): " << pre.trans.size() << " transition(s)\n";
        for (const auto& [s, x, t] : pre.trans)
            ctx.text << "  trans " << state_name(pre, pds, s) << " " << pds.symbol_names[x] << " "
                     << state_name(pre, pds, t) << "\n";
        ctx.text << "  final";
        for (int f : pre.finals) ctx.text << " " << state_name(pre, pds, f);
        ctx.text << "\n" << "fifo and lifo agree: " << (agree ? "yes" : "no") << "\n";
        if ((*o)["config"].empty()) return int(kTrue);
        auto parts = split_ws((*o)["config"]);
        if (parts.empty()) throw UsageError("--config is 'state sym…' (top first)");
        int p = -1;
        for (int i = 0; i < pds.pds.states; ++i)
            if (pds.state_names[i] == parts[0]) p = i;
        if (p < 0) throw Error("unknown control state '" + parts[0] + "'");
        std::vector<int> stack;
        for (std::size_t i = 1; i < parts.size(); ++i) {
            auto it = std::find(pds.symbol_names.begin(), pds.symbol_names.end(), parts[i]);
            if (it == pds.symbol_names.end()) throw Error("unknown stack symbol '" + parts[i] + "'");
            stack.push_back(static_cast<int>(it - pds.symbol_names.begin()));
        }
        const bool member = pre.accepts(p, stack);
        ctx.doc["config"] = (*o)["config"];
        ctx.doc["member"] = member;
        ctx.text << "configuration " << (*o)["config"] << ": " << (member ? "in pre*" : "not in pre*") << "\n";
        return int(member ? kTrue : kFalse);
    });
    ps->add_option("--pds", (*o)["pds"], "pushdown system file")->required();
    ps->add_option("--target", (*o)["target"], "P-automaton file")->required();
    ps->add_option("--worklist", (*o)["worklist"], "fifo or lifo")->default_val("fifo");
    ps->add_option("--config", (*o)["config"], "configuration to test, 'p X Y' top first");

    auto* pu = command(app, slot, "pump", "pumping decomposition on an infinite input stream", [o, n](Context& ctx) {
        Dpda d = parse_dpda(read_file((*o)["dpda"]));
        const bool limit = !(*o)["limit"].empty() || (*o)["period"].empty();
        Word source;
        if (limit) {
            Word v = (*o)["limit"] == "_" ? "" : (*o)["limit"];
            source = limit_word_prefix(v, (std::size_t{1} << 14) + 64);
        } else {
            source = parse_word((*o)["period"]);
            if (source.empty()) throw UsageError("--period must be non-empty");
        }
        auto stream = [&](std::size_t i) { return limit ? source[i] : source[i % source.size()]; };
        PumpingDecomposition p = pump_decompose(d, stream, *n);
        Json checked = Json::array();
        for (const auto& x : p.checked) checked.push_back(show_word(x));
        ctx.doc["stream"] = limit ? "limit:" + show_word((*o)["limit"] == "_" ? "" : (*o)["limit"])
                                  : "period:" + (*o)["period"];
        ctx.doc["u0"] = show_word(p.u0);
        ctx.doc["u1"] = show_word(p.u1);
        ctx.doc["state"] = p.state;
        ctx.doc["top"] = p.top;
        ctx.doc["level"] = p.level;
        ctx.doc["stairs"] = {p.first_step, p.second_step};
        ctx.doc["inspected"] = p.inspected;
        ctx.doc["checked"] = checked;
        ctx.text << "u0 = " << show_word(p.u0) << "\n" << "u1 = " << show_word(p.u1) << "\n"
                 << "repeated state " << p.state << ", top " << p.top << ", level " << p.level << "\n"
                 << "stairs " << p.first_step << " and " << p.second_step << ", " << p.inspected
                 << " letter(s) inspected\n" << "checked x:";
        for (const auto& x : p.checked) ctx.text << " " << show_word(x);
        ctx.text << "\n";
        return int(kTrue);
    });
    pu->add_option("--dpda", (*o)["dpda"], "DPDA file")->required();
    pu->add_option("--limit", (*o)["limit"], "use the palindrome limit word for this v (_ for ε)");
    pu->add_option("--period", (*o)["period"], "use period^ω as the stream");
    pu->add_option("--samples", *n, "accepted prefixes to re-check");

    auto* la = app.add_subcommand("lang", "language queries");
    la->require_subcommand(1);
    auto* mem = command(*la, slot, "member", "membership test", [o](Context& ctx) {
        LangPtr l = ctx.env.lookup((*o)["lang"]);
        Word w = parse_word((*o)["word"]);
        const bool in = l->member(w);
        ctx.doc["lang"] = l->name();
        ctx.doc["word"] = show_word(w);
        ctx.doc["member"] = in;
        ctx.text << show_word(w) << (in ? " ∈ " : " ∉ ") << l->name() << "\n";
        return int(in ? kTrue : kFalse);
    });
    mem->add_option("--lang", (*o)["lang"], "language name")->required();
    mem->add_option("--word", (*o)["word"], "word (_ for ε)")->required();

    auto* en = command(*la, slot, "enumerate", "words up to the len bound", [o](Context& ctx) {
        LangPtr l = ctx.env.lookup((*o)["lang"]);
        const std::size_t len = ctx.bounds.length(6);
        auto words = l->enumerate(len);
        ctx.doc["lang"] = l->name();
        ctx.doc["len"] = len;
        ctx.doc["words"] = words_json(words);
        ctx.text << words_text(words) << "\n";
        return int(kTrue);
    });
    en->add_option("--lang", (*o)["lang"], "language name")->required();

    auto* no = command(*la, slot, "norm", "||L||", [o](Context& ctx) {
        LangPtr l = ctx.env.lookup((*o)["lang"]);
        OmegaPlusOne k = l->norm();
        ctx.doc["lang"] = l->name();
        ctx.doc["norm"] = k.str();
        ctx.text << k.str() << "\n";
        return int(kTrue);
    });
    no->add_option("--lang", (*o)["lang"], "language name")->required();
}

}  // namespace pdlsep::cli
