#include "pdlsep/language.hpp"

#include <algorithm>
#include <functional>

#include "pdlsep/pushdown.hpp"

namespace pdlsep {

namespace {

template <class... F>
struct Overload : F... {
    using F::operator()...;
};
template <class... F>
Overload(F...) -> Overload<F...>;

LetterSet backend_letters(const Backend& b) {
    return std::visit(Overload{
                          [](const FiniteLang& f) {
                              LetterSet s;
                              for (const auto& w : f.words) s.insert(w.begin(), w.end());
                              return s;
                          },
                          [](const RegularLang& r) { return r.nfa.letters(); },
                          [](const DpdaLang& d) { return d.dpda.letters(); },
                          [](const CfgLang& c) { return c.cfg.terminals(); },
                          [](const PalLang& p) {
                              LetterSet s = p.letters;
                              if (p.dollar) s.insert(kDollar);
                              return s;
                          },
                      },
                      b);
}

LetterSet without_dollar(LetterSet s) {
    s.erase(kDollar);
    return s;
}

Dfa dfa_of(const Nfa& n, const LetterSet& letters) { return determinize(n, letters); }

}  // namespace

Cfg palindrome_cfg(const LetterSet& letters, bool dollar) {
    Cfg g;
    int top = g.nonterminal("P$");
    int p = g.nonterminal("P");
    g.start = dollar ? top : p;
    g.add(p, {});
    for (Letter a : letters) {
        g.add(p, {Symbol::t(a)});
        g.add(p, {Symbol::t(a), Symbol::n(p), Symbol::t(a)});
    }
    if (dollar) g.add(top, {Symbol::n(p), Symbol::t(kDollar)});
    return cfg_trim(g);
}

Language::Language(std::string name, LetterSet alphabet, Backend backend)
    : name_(std::move(name)), alphabet_(std::move(alphabet)), backend_(std::move(backend)),
      cache_(std::make_shared<Cache>()) {
    auto extra = backend_letters(backend_);
    alphabet_.insert(extra.begin(), extra.end());
    if (auto* d = std::get_if<DpdaLang>(&backend_)) d->dpda.check_deterministic();
}

LangPtr Language::make(std::string name, LetterSet alphabet, Backend backend) {
    return std::make_shared<const Language>(std::move(name), std::move(alphabet), std::move(backend));
}

LangPtr Language::finite(std::string name, LetterSet alphabet, std::set<Word> words) {
    return make(std::move(name), std::move(alphabet), FiniteLang{std::move(words)});
}

const char* Language::kind() const {
    static constexpr const char* names[] = {"finite", "regex", "dpda", "cfg", "palindromes"};
    return names[backend_.index()];
}

bool Language::member(std::string_view w) const {
    return std::visit(Overload{
                          [&](const FiniteLang& f) { return f.words.count(Word(w)) != 0; },
                          [&](const RegularLang& r) { return r.nfa.accepts(w); },
                          [&](const DpdaLang& d) { return DpdaRunner(d.dpda).accepts(w); },
                          [&](const CfgLang& c) { return cfg_member(c.cfg, w); },
                          [&](const PalLang& p) {
                              std::string_view body = w;
                              if (p.dollar) {
                                  if (body.empty() || body.back() != kDollar) return false;
                                  body.remove_suffix(1);
                              }
                              for (Letter a : body)
                                  if (!p.letters.count(a)) return false;
                              return is_palindrome(body);
                          },
                      },
                      backend_);
}

namespace {

std::set<Word> dpda_enumerate(const Dpda& d, const LetterSet& letters, std::size_t max_len) {
    DpdaRunner run(d);
    std::set<Word> out;
    Word w;
    std::function<void(Config)> go = [&](Config c) {
        bool final_seen = false;
        bool ok = run.close(c, [&](const Config& x) { final_seen = final_seen || d.finals.count(x.state); });
        if (final_seen) out.insert(w);
        if (!ok || w.size() == max_len) return;
        for (Letter a : letters) {
            const DpdaRule* r = run.rule(c, a);
            if (!r) continue;
            Config next = c;
            DpdaRunner::apply(next, *r);
            w.push_back(a);
            go(std::move(next));
            w.pop_back();
        }
    };
    go(run.initial());
    return out;
}

std::set<Word> palindromes(const LetterSet& letters, bool dollar, std::size_t max_len) {
    std::set<Word> out;
    std::size_t body_max = dollar ? (max_len == 0 ? 0 : max_len - 1) : max_len;
    if (dollar && max_len == 0) return out;
    // Grow palindromes outward from their centres.
    std::vector<Word> layer{Word{}};
    for (Letter a : letters) layer.push_back(Word(1, a));
    while (!layer.empty()) {
        std::vector<Word> next;
        for (const auto& w : layer) {
            if (w.size() > body_max) continue;
            out.insert(dollar ? w + kDollar : w);
            if (w.size() + 2 <= body_max)
                for (Letter a : letters) next.push_back(a + w + a);
        }
        layer = std::move(next);
    }
    return out;
}

}  // namespace

std::set<Word> Language::enumerate(std::size_t max_len) const {
    if (max_len > enumeration_cap())
        throw CapExceeded("enumeration length " + std::to_string(max_len) + " exceeds cap " +
                          std::to_string(enumeration_cap()));
    return std::visit(Overload{
                          [&](const FiniteLang& f) {
                              std::set<Word> out;
                              for (const auto& w : f.words)
                                  if (w.size() <= max_len) out.insert(w);
                              return out;
                          },
                          [&](const RegularLang& r) { return nfa_enumerate(r.nfa, max_len); },
                          [&](const DpdaLang& d) { return dpda_enumerate(d.dpda, alphabet_, max_len); },
                          [&](const CfgLang& c) { return cfg_enumerate(c.cfg, alphabet_, max_len); },
                          [&](const PalLang& p) { return palindromes(p.letters, p.dollar, max_len); },
                      },
                      backend_);
}

Cfg Language::to_cfg() const {
    std::call_once(cache_->cfg_once, [&] {
        cache_->cfg = std::visit(Overload{
                                     [](const FiniteLang& f) {
                                         Cfg g;
                                         g.start = g.nonterminal("S");
                                         for (const auto& w : f.words) {
                                             std::vector<Symbol> body;
                                             for (Letter a : w) body.push_back(Symbol::t(a));
                                             g.add(g.start, std::move(body));
                                         }
                                         return g;
                                     },
                                     [](const RegularLang& r) {
                                         Cfg g;
                                         g.start = g.nonterminal("S");
                                         for (int q = 0; q < r.nfa.size(); ++q) g.nonterminal("Q" + std::to_string(q));
                                         auto nt = [&](int q) { return Symbol::n(*g.find("Q" + std::to_string(q))); };
                                         for (int q : r.nfa.initial) g.add(g.start, {nt(q)});
                                         for (int q = 0; q < r.nfa.size(); ++q) {
                                             if (r.nfa.finals.count(q)) g.add(nt(q).id, {});
                                             for (const auto& e : r.nfa.edges[q])
                                                 g.add(nt(q).id, {Symbol::t(e.letter), nt(e.target)});
                                         }
                                         return cfg_trim(g);
                                     },
                                     [](const DpdaLang& d) { return pda_to_cfg(normalize_dpda(d.dpda)); },
                                     [](const CfgLang& c) { return c.cfg; },
                                     [](const PalLang& p) { return palindrome_cfg(p.letters, p.dollar); },
                                 },
                                 backend_);
    });
    return cache_->cfg;
}

bool Language::is_empty() const {
    return std::visit(Overload{
                          [](const FiniteLang& f) { return f.words.empty(); },
                          [](const RegularLang& r) { return pdlsep::is_empty(r.nfa); },
                          [&](const DpdaLang&) { return cfg_is_empty(to_cfg()); },
                          [](const CfgLang& c) { return cfg_is_empty(c.cfg); },
                          [](const PalLang&) { return false; },
                      },
                      backend_);
}

std::optional<Word> Language::shortest_word() const {
    return std::visit(Overload{
                          [](const FiniteLang& f) -> std::optional<Word> {
                              if (f.words.empty()) return std::nullopt;
                              return *std::min_element(f.words.begin(), f.words.end(), ShortLex{});
                          },
                          [](const RegularLang& r) { return pdlsep::shortest_word(r.nfa); },
                          [&](const DpdaLang&) { return cfg_shortest_word(to_cfg()); },
                          [](const CfgLang& c) { return cfg_shortest_word(c.cfg); },
                          [](const PalLang& p) -> std::optional<Word> { return p.dollar ? Word(1, kDollar) : Word(); },
                      },
                      backend_);
}

std::optional<std::pair<Word, Word>> Language::two_words() const {
    auto w1 = shortest_word();
    if (!w1) return std::nullopt;
    if (auto* f = std::get_if<FiniteLang>(&backend_)) {
        for (const auto& w : f->words)
            if (w != *w1) return std::make_pair(*w1, w);
        return std::nullopt;
    }
    auto rest = intersect_regular(dfa_all_but(alphabet_, *w1).to_nfa());
    auto w2 = rest->shortest_word();
    if (!w2) return std::nullopt;
    return std::make_pair(*w1, *w2);
}

OmegaPlusOne Language::norm() const {
    std::call_once(cache_->norm_once, [&] {
        auto pair = two_words();
        if (pair) {
            cache_->norm = OmegaPlusOne::omega();
            return;
        }
        auto w = shortest_word();
        cache_->norm = w ? OmegaPlusOne::fin(w->size()) : OmegaPlusOne::omega();
    });
    return cache_->norm;
}

std::size_t Language::longest_word() const {
    const auto& ws = words();
    std::size_t out = 0;
    for (const auto& w : ws) out = std::max(out, w.size());
    return out;
}

LangPtr Language::intersect_regular(const Nfa& r, const std::string& tag) const {
    std::string name = "(" + name_ + "&" + tag + ")";
    return std::visit(Overload{
                          [&](const FiniteLang& f) {
                              std::set<Word> ws;
                              for (const auto& w : f.words)
                                  if (r.accepts(w)) ws.insert(w);
                              return finite(name, alphabet_, std::move(ws));
                          },
                          [&](const RegularLang& n) { return make(name, alphabet_, RegularLang{trim(product(n.nfa, r))}); },
                          [&](const DpdaLang& d) {
                              LetterSet letters = alphabet_;
                              auto more = r.letters();
                              letters.insert(more.begin(), more.end());
                              return make(name, alphabet_, DpdaLang{dpda_product(d.dpda, dfa_of(r, letters))});
                          },
                          [&](const CfgLang& c) { return make(name, alphabet_, CfgLang{cfg_intersect(c.cfg, r)}); },
                          [&](const PalLang&) { return make(name, alphabet_, CfgLang{cfg_intersect(to_cfg(), r)}); },
                      },
                      backend_);
}

LangPtr Language::remove_epsilon() const {
    std::string name = name_ + "-eps";
    if (auto* f = std::get_if<FiniteLang>(&backend_)) {
        auto ws = f->words;
        ws.erase(Word{});
        return finite(name, alphabet_, std::move(ws));
    }
    if (auto* r = std::get_if<RegularLang>(&backend_))
        return make(name, alphabet_, RegularLang{nfa_remove_epsilon(r->nfa)});
    return intersect_regular(nfa_nonempty(alphabet_))->renamed(name);
}

LangPtr Language::left_quotient(Letter a) const {
    std::string name = std::string(1, a) + "\\" + name_;
    return std::visit(Overload{
                          [&](const FiniteLang& f) {
                              std::set<Word> ws;
                              for (const auto& w : f.words)
                                  if (!w.empty() && w[0] == a) ws.insert(w.substr(1));
                              return finite(name, alphabet_, std::move(ws));
                          },
                          [&](const RegularLang& r) { return make(name, alphabet_, RegularLang{nfa_left_quotient(r.nfa, a)}); },
                          [&](const DpdaLang& d) { return make(name, alphabet_, DpdaLang{dpda_left_quotient(d.dpda, a)}); },
                          [&](const CfgLang& c) { return make(name, alphabet_, CfgLang{cfg_left_quotient(c.cfg, a)}); },
                          [&](const PalLang&) { return make(name, alphabet_, CfgLang{cfg_left_quotient(to_cfg(), a)}); },
                      },
                      backend_);
}

LangPtr Language::right_quotient(Letter a) const {
    std::string name = name_ + "/" + std::string(1, a);
    return std::visit(Overload{
                          [&](const FiniteLang& f) {
                              std::set<Word> ws;
                              for (const auto& w : f.words)
                                  if (!w.empty() && w.back() == a) ws.insert(w.substr(0, w.size() - 1));
                              return finite(name, alphabet_, std::move(ws));
                          },
                          [&](const RegularLang& r) { return make(name, alphabet_, RegularLang{nfa_right_quotient(r.nfa, a)}); },
                          [&](const DpdaLang& d) { return make(name, alphabet_, DpdaLang{dpda_right_quotient(d.dpda, a)}); },
                          [&](const CfgLang& c) { return make(name, alphabet_, CfgLang{cfg_right_quotient(c.cfg, a)}); },
                          [&](const PalLang& p) {
                              if (p.dollar && a == kDollar) return make(name, alphabet_, PalLang{p.letters, false});
                              return make(name, alphabet_, CfgLang{cfg_right_quotient(to_cfg(), a)});
                          },
                      },
                      backend_);
}

std::pair<LangPtr, LangPtr> Language::dollar_split() const {
    const LetterSet sigma = without_dollar(alphabet_);
    const std::string n1 = "L1(" + name_ + ")", n2 = "L2(" + name_ + ")";
    return std::visit(
        Overload{
            [&](const FiniteLang& f) {
                std::set<Word> l1, l2;
                for (const auto& w : f.words) {
                    auto pos = w.find(kDollar);
                    if (pos == Word::npos) l1.insert(w);
                    else l2.insert(w.substr(0, pos + 1));
                }
                return std::make_pair(finite(n1, alphabet_, std::move(l1)), finite(n2, alphabet_, std::move(l2)));
            },
            [&](const RegularLang& r) {
                return std::make_pair(
                    make(n1, alphabet_, RegularLang{trim(product(r.nfa, nfa_universal(sigma)))}),
                    make(n2, alphabet_,
                         RegularLang{trim(product(nfa_prefix_closure(r.nfa), nfa_words_then_dollar(sigma)))}));
            },
            [&](const DpdaLang& d) {
                const LetterSet all = alphabet_;
                return std::make_pair(
                    make(n1, alphabet_, DpdaLang{dpda_product(d.dpda, determinize(nfa_universal(sigma), all))}),
                    make(n2, alphabet_,
                         DpdaLang{dpda_product(dpda_prefix_closure(d.dpda),
                                               determinize(nfa_words_then_dollar(sigma), all))}));
            },
            [&](const CfgLang& c) {
                return std::make_pair(
                    make(n1, alphabet_, CfgLang{cfg_intersect(c.cfg, nfa_universal(sigma))}),
                    make(n2, alphabet_, CfgLang{cfg_intersect(cfg_prefix_closure(c.cfg), nfa_words_then_dollar(sigma))}));
            },
            [&](const PalLang& p) {
                LangPtr none = finite("", alphabet_, {});
                LangPtr self = make("", alphabet_, p);
                return p.dollar ? std::make_pair(none->renamed(n1), self->renamed(n2))
                                : std::make_pair(self->renamed(n1), none->renamed(n2));
            },
        },
        backend_);
}

LangPtr Language::prepend(const Word& prefix) const {
    if (prefix.empty()) return renamed(name_);
    std::string name = prefix + "." + name_;
    return std::visit(Overload{
                          [&](const FiniteLang& f) {
                              std::set<Word> ws;
                              for (const auto& w : f.words) ws.insert(prefix + w);
                              return finite(name, alphabet_, std::move(ws));
                          },
                          [&](const RegularLang& r) { return make(name, alphabet_, RegularLang{nfa_prepend(r.nfa, prefix)}); },
                          [&](const DpdaLang& d) { return make(name, alphabet_, DpdaLang{dpda_prepend(d.dpda, prefix)}); },
                          [&](const CfgLang& c) { return make(name, alphabet_, CfgLang{cfg_prepend(c.cfg, prefix)}); },
                          [&](const PalLang&) { return make(name, alphabet_, CfgLang{cfg_prepend(to_cfg(), prefix)}); },
                      },
                      backend_);
}

LangPtr Language::renamed(std::string name) const { return make(std::move(name), alphabet_, backend_); }

}  // namespace pdlsep
