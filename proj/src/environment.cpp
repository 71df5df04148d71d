#include "pdlsep/environment.hpp"

#include <fstream>
#include <sstream>
#include <vector>

namespace pdlsep {

void Environment::add(LangPtr lang) {
    for (Letter a : lang->alphabet())
        if (a != kDollar) sigma_.letters.insert(a);
    langs_[lang->name()] = std::move(lang);
}

LangPtr Environment::lookup(const std::string& name) const {
    auto it = langs_.find(name);
    if (it == langs_.end()) throw Error("unknown language '" + name + "'");
    return it->second;
}

std::string read_file(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw Error("cannot read " + file.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

namespace {

std::string strip(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

}  // namespace

Environment parse_environment(std::string_view text, const std::filesystem::path& base) {
    struct Pending {
        std::string name;
        Backend backend;
    };
    std::vector<Pending> pending;
    std::optional<Alphabet> declared;
    std::istringstream is{std::string(text)};
    std::size_t lineno = 0;
    for (std::string line; std::getline(is, line);) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line = strip(line);
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string kw;
        ls >> kw;
        if (kw == "alphabet") {
            std::string letters, rest;
            for (std::string t; ls >> t;) letters += t;
            try {
                declared = Alphabet::of(letters);
            } catch (const Error& e) {
                throw ParseError(e.what(), lineno);
            }
            continue;
        }
        if (kw != "lang") throw ParseError("expected 'lang' or 'alphabet'", lineno);
        auto colon = line.find(':');
        if (colon == std::string::npos) throw ParseError("expected ':' after the language kind", lineno);
        std::istringstream head(line.substr(4, colon - 4));
        std::string name, kind, extra;
        head >> name >> kind;
        if (name.empty() || kind.empty() || (head >> extra)) throw ParseError("expected 'lang NAME KIND:'", lineno);
        if (name.find(']') != std::string::npos) throw ParseError("language names may not contain ']'", lineno);
        std::string arg = strip(std::string_view(line).substr(colon + 1));
        auto path = [&] {
            std::filesystem::path p(arg);
            return p.is_absolute() || base.empty() ? p : base / p;
        };
        try {
            if (kind == "finite") {
                std::set<Word> words;
                std::size_t from = 0;
                while (!arg.empty()) {
                    auto comma = arg.find(',', from);
                    std::string tok = strip(arg.substr(from, comma == std::string::npos ? std::string::npos : comma - from));
                    if (tok.empty()) throw ParseError("empty word in list; write '_' for ε", lineno);
                    words.insert(parse_word(tok));
                    if (comma == std::string::npos) break;
                    from = comma + 1;
                }
                pending.push_back({name, FiniteLang{std::move(words)}});
            } else if (kind == "regex") {
                pending.push_back({name, RegularLang{nfa_from_regex(arg)}});
            } else if (kind == "dpda") {
                pending.push_back({name, DpdaLang{parse_dpda(read_file(path()))}});
            } else if (kind == "cfg") {
                pending.push_back({name, CfgLang{parse_cfg(read_file(path()))}});
            } else if (kind == "palindromes") {
                std::istringstream as(arg);
                PalLang p;
                for (std::string t; as >> t;) {
                    if (t == "$") p.dollar = true;
                    else p.letters.insert(t.begin(), t.end());
                }
                pending.push_back({name, p});
            } else {
                throw ParseError("unknown language kind '" + kind + "'", lineno);
            }
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw ParseError(std::string(e.what()) + " in language '" + name + "'", lineno);
        }
    }
    Environment env(declared.value_or(Alphabet{}));
    LetterSet sigma = env.sigma().letters;
    if (!declared) {
        for (const auto& p : pending) {
            auto l = Language::make(p.name, {}, p.backend);
            for (Letter a : l->alphabet())
                if (a != kDollar) sigma.insert(a);
        }
    }
    sigma.insert(kDollar);
    for (auto& p : pending) {
        if (env.contains(p.name)) throw Error("language '" + p.name + "' defined twice");
        env.add(Language::make(p.name, sigma, std::move(p.backend)));
    }
    return env;
}

Environment load_environment(const std::filesystem::path& file) {
    return parse_environment(read_file(file), file.parent_path());
}

}  // namespace pdlsep
