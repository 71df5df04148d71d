#include <iostream>

#include "cli.hpp"

namespace pdlsep::cli {

Bounds parse_bounds(const std::string& text) {
    Bounds b;
    if (text.empty()) return b;
    std::istringstream is(text);
    for (std::string item; std::getline(is, item, ',');) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw UsageError("--bounds entries look like key=value, got '" + item + "'");
        const std::string key = item.substr(0, eq);
        const std::string val = item.substr(eq + 1);
        std::size_t n = 0;
        try {
            std::size_t used = 0;
            n = std::stoul(val, &used);
            if (used != val.size()) throw std::invalid_argument(val);
        } catch (const std::logic_error&) {
            throw UsageError("--bounds value for '" + key + "' is not a number: '" + val + "'");
        }
        if (key == "depth")
            b.depth = n;
        else if (key == "branch")
            b.branch = n;
        else if (key == "len")
            b.len = n;
        else
            throw UsageError("unknown --bounds key '" + key + "' (depth, branch, len)");
    }
    return b;
}

void Context::prepare() {
    bounds = parse_bounds(bounds_text);
    if (jobs < 1) throw UsageError("--jobs must be at least 1");
    env = env_file.empty() ? Environment(Alphabet::of("ab")) : load_environment(env_file);
}

void Context::verdict(const Verdict3& v) {
    doc["verdict"] = to_string(v.kind);
    doc["evidence"] = v.evidence;
    text << "verdict: " << to_string(v.kind) << "\n";
    if (!v.evidence.empty()) text << "evidence: " << v.evidence << "\n";
    if (v.countermodel) {
        doc["countermodel"] = structure_json(*v.countermodel);
        text << "countermodel:\n" << to_text(*v.countermodel);
    }
}

void Context::emit() const {
    if (json)
        std::cout << doc.dump(2) << "\n";
    else
        std::cout << text.str();
}

CLI::App* command(CLI::App& app, Action& slot, const std::string& name, const std::string& about,
                  std::function<int(Context&)> run) {
    CLI::App* sub = app.add_subcommand(name, about);
    sub->callback([&slot, run = std::move(run)] { slot = run; });
    return sub;
}

Json measure_json(const Measure& m) {
    Json out = Json::array();
    for (const auto& seq : m) {
        Json s = Json::array();
        for (const auto& k : seq) {
            if (k.is_omega())
                s.push_back("ω");
            else
                s.push_back(k.value());
        }
        out.push_back(std::move(s));
    }
    return out;
}

Measure parse_measure(const std::string& text) {
    Measure m;
    std::size_t i = 0;
    auto fail = [&](const std::string& what) -> Measure { throw ParseError("measure: " + what, i); };
    auto skip = [&] {
        while (i < text.size() && (text[i] == ' ' || text[i] == ',')) ++i;
    };
    skip();
    if (i >= text.size() || text[i] != '{') return fail("expected '{'");
    ++i;
    while (true) {
        skip();
        if (i >= text.size()) return fail("unterminated set");
        if (text[i] == '}') {
            ++i;
            break;
        }
        if (text[i] != '[') return fail("expected '['");
        ++i;
        OrdinalSeq seq;
        while (true) {
            skip();
            if (i >= text.size()) return fail("unterminated sequence");
            if (text[i] == ']') {
                ++i;
                break;
            }
            if (std::isdigit(static_cast<unsigned char>(text[i]))) {
                std::uint64_t v = 0;
                while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
                    v = v * 10 + static_cast<std::uint64_t>(text[i++] - '0');
                seq.push_back(OmegaPlusOne::fin(v));
            } else if (text.compare(i, 5, "omega") == 0) {
                i += 5;
                seq.push_back(OmegaPlusOne::omega());
            } else if (text.compare(i, 2, "ω") == 0) {
                i += 2;
                seq.push_back(OmegaPlusOne::omega());
            } else if (text[i] == 'w') {
                ++i;
                seq.push_back(OmegaPlusOne::omega());
            } else {
                return fail("expected a number or ω");
            }
        }
        m.insert(std::move(seq));
    }
    skip();
    if (i != text.size()) return fail("trailing characters");
    return m;
}

Json words_json(const std::set<Word>& words) {
    WordSet sorted(words.begin(), words.end());
    Json out = Json::array();
    for (const auto& w : sorted) out.push_back(show_word(w));
    return out;
}

std::string words_text(const std::set<Word>& words) {
    WordSet sorted(words.begin(), words.end());
    std::string s = "{";
    bool first = true;
    for (const auto& w : sorted) {
        s += (first ? "" : ", ") + show_word(w);
        first = false;
    }
    return s + "}";
}

Json structure_json(const Structure& m) {
    Json states = Json::array();
    Json edges = Json::array();
    for (int s = 0; s < m.lts.size(); ++s) {
        Json st = Json::object();
        st["name"] = m.lts.names[s];
        st["props"] = Json(std::vector<std::string>(m.lts.labels[s].begin(), m.lts.labels[s].end()));
        states.push_back(std::move(st));
        for (const auto& [a, t] : m.lts.succ[s]) edges.push_back(Json::array({m.lts.names[s], std::string(1, a), m.lts.names[t]}));
    }
    Json out = Json::object();
    out["states"] = std::move(states);
    out["edges"] = std::move(edges);
    out["root"] = m.lts.names[m.root];
    return out;
}

int verdict_exit(const Verdict3& v) {
    if (v.is_valid()) return kTrue;
    if (v.is_refuted()) return kFalse;
    return kUnknown;
}

}  // namespace pdlsep::cli
