#include "pdlsep/transform.hpp"

#include <algorithm>
#include <map>

namespace pdlsep {

bool is_epsilon_free(const Formula& f) {
    switch (f->op) {
        case Op::False:
        case Op::True:
        case Op::Lit: return true;
        case Op::Or:
        case Op::And: return is_epsilon_free(f->left) && is_epsilon_free(f->right);
        case Op::EF:
        case Op::AG: return !f->lang.lang->member("") && is_epsilon_free(f->body());
    }
    return true;
}

Formula elim_ew(const Formula& f) {
    switch (f->op) {
        case Op::False:
        case Op::True:
        case Op::Lit: return f;
        case Op::Or: return f_or(elim_ew(f->left), elim_ew(f->right));
        case Op::And: return f_and(elim_ew(f->left), elim_ew(f->right));
        case Op::EF:
        case Op::AG: {
            Formula body = elim_ew(f->body());
            const LangPtr& l = f->lang.lang;
            if (!l->member("")) return f_modal(f->op, f->lang, body);
            LangPtr rest = l->remove_epsilon();
            if (rest->is_empty()) return body;
            Formula modal = f_modal(f->op, LanguageRef{rest->name(), rest}, body);
            return f->op == Op::EF ? f_or(body, modal) : f_and(body, modal);
        }
    }
    return f;
}

void adopt_languages(Environment& env, const Formula& f) {
    for (const auto& l : languages(f))
        if (!env.contains(l->name())) env.add(l);
}

Measure measure(const Formula& f) {
    switch (f->op) {
        case Op::False:
        case Op::True:
        case Op::Lit: return nil_measure();
        case Op::Or:
        case Op::And: {
            Measure m = measure(f->left);
            m.merge(measure(f->right));
            return m;
        }
        case Op::EF:
        case Op::AG: {
            OmegaPlusOne n;
            try {
                n = f->lang.lang->norm();
            } catch (const Error& e) {
                throw Error("norm of language '" + f->lang.name + "' undecided: " + e.what());
            }
            return cons(n, measure(f->body()));
        }
    }
    return nil_measure();
}

namespace {

void sort_unique(std::vector<Formula>& v) {
    std::sort(v.begin(), v.end(), [](const Formula& a, const Formula& b) { return a->key < b->key; });
    v.erase(std::unique(v.begin(), v.end(), [](const Formula& a, const Formula& b) { return a->key == b->key; }),
            v.end());
}

std::vector<Formula> concat(std::vector<Formula> a, const std::vector<Formula>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

}  // namespace

std::string Term::key() const {
    std::string k;
    for (const auto* part : {&lits, &ag, &ef}) {
        k += '{';
        for (const auto& f : *part) k += f->key + ';';
        k += '}';
    }
    return k;
}

Term make_term(std::vector<Formula> lits, std::vector<Formula> ag, std::vector<Formula> ef) {
    Term t{std::move(lits), std::move(ag), std::move(ef)};
    sort_unique(t.lits);
    sort_unique(t.ag);
    sort_unique(t.ef);
    return t;
}

void Dnf::canonicalize() {
    for (auto& t : terms) t = make_term(std::move(t.lits), std::move(t.ag), std::move(t.ef));
    std::vector<std::pair<std::string, Term>> keyed;
    for (auto& t : terms) keyed.push_back({t.key(), std::move(t)});
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    keyed.erase(std::unique(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first == b.first; }),
                keyed.end());
    terms.clear();
    for (auto& [k, t] : keyed) terms.push_back(std::move(t));
}

std::string Dnf::str() const { return dnf_to_formula(*this)->key; }

Dnf to_dnf(const Formula& f) {
    Dnf d;
    switch (f->op) {
        case Op::False: break;
        case Op::True: d.terms.push_back({}); break;
        case Op::Lit: d.terms.push_back(make_term({f}, {}, {})); break;
        case Op::EF: d.terms.push_back(make_term({}, {}, {f})); break;
        case Op::AG: d.terms.push_back(make_term({}, {f}, {})); break;
        case Op::Or: {
            d = to_dnf(f->left);
            for (auto& t : to_dnf(f->right).terms) d.terms.push_back(std::move(t));
            break;
        }
        case Op::And: {
            Dnf l = to_dnf(f->left), r = to_dnf(f->right);
            for (const auto& a : l.terms)
                for (const auto& b : r.terms)
                    d.terms.push_back(make_term(concat(a.lits, b.lits), concat(a.ag, b.ag), concat(a.ef, b.ef)));
            break;
        }
    }
    d.canonicalize();
    return d;
}

Formula term_to_formula(const Term& t) { return f_and_all(concat(concat(t.lits, t.ag), t.ef)); }

Formula dnf_to_formula(const Dnf& d) {
    std::vector<Formula> parts;
    for (const auto& t : d.terms) parts.push_back(term_to_formula(t));
    return f_or_all(parts);
}

Measure measure(const Dnf& d) { return measure(dnf_to_formula(d)); }

CompletionReport complete(const Dnf& d, const ValidityOracle& oracle) {
    CompletionReport rep;
    rep.result = d;
    std::vector<Formula> psi;
    for (const auto& t : d.terms) psi = concat(std::move(psi), t.ef);
    sort_unique(psi);
    if (psi.size() > 20) throw CapExceeded("completion over " + std::to_string(psi.size()) + " EF-conjuncts");

    const Formula target = dnf_to_formula(d);
    const std::size_t n = psi.size();
    std::vector<char> valid(std::size_t{1} << n, 0);
    std::set<std::string> present;
    for (const auto& t : d.terms) present.insert(t.key());
    // Masks are visited in increasing order, so every proper subset of a mask
    // is decided before the mask itself.
    for (std::size_t mask = 0; mask < valid.size(); ++mask) {
        std::vector<Formula> sub;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) sub.push_back(psi[i]);
        bool known = false;
        for (std::size_t i = 0; i < n && !known; ++i)
            if ((mask >> i & 1) && valid[mask & ~(std::size_t{1} << i)]) known = true;
        for (const auto& t : d.terms) {
            if (known) break;
            if (!t.lits.empty() || !t.ag.empty()) continue;
            known = std::all_of(t.ef.begin(), t.ef.end(), [&](const Formula& e) {
                return std::any_of(sub.begin(), sub.end(), [&](const Formula& s) { return s->key == e->key; });
            });
        }
        if (known) {
            ++rep.shortcuts;
        } else {
            ++rep.oracle_calls;
            Verdict3 v = oracle(f_implies(f_and_all(sub), target));
            if (v.is_unknown()) rep.unknown.push_back(sub);
            known = v.is_valid();
        }
        if (!known) continue;
        valid[mask] = 1;
        Term t = make_term({}, {}, sub);
        if (!present.count(t.key())) {
            rep.added.push_back(sub);
            rep.result.terms.push_back(std::move(t));
        }
    }
    rep.result.canonicalize();
    return rep;
}

ElimAgReport elim_ag(const Dnf& d, const ValidityOracle& oracle) {
    ElimAgReport rep;
    for (std::size_t i = 0; i < d.terms.size(); ++i) {
        const Term& t = d.terms[i];
        Verdict3::Kind k = Verdict3::Kind::Valid;
        if (!t.lits.empty() || !t.ag.empty()) k = oracle(f_and_all(concat(t.lits, t.ag))).kind;
        rep.verdicts.push_back(k);
        if (k == Verdict3::Kind::Valid) {
            rep.result.terms.push_back(make_term({}, {}, t.ef));
        } else if (k == Verdict3::Kind::Unknown) {
            rep.partial = true;
            rep.undecided.push_back(i);
            rep.result.terms.push_back(t);
        }
    }
    rep.result.canonicalize();
    return rep;
}

}  // namespace pdlsep
