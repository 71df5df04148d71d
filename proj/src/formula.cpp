#include "pdlsep/formula.hpp"

#include <cctype>
#include <map>

namespace pdlsep {

namespace {

Node node(Op op) {
    Node n;
    n.op = op;
    return n;
}

Formula make(Node n) {
    switch (n.op) {
        case Op::False: n.key = "false"; break;
        case Op::True: n.key = "true"; break;
        case Op::Lit: n.key = (n.negated ? "!" : "") + n.prop; break;
        case Op::Or: n.key = "(" + n.left->key + " | " + n.right->key + ")"; break;
        case Op::And: n.key = "(" + n.left->key + " & " + n.right->key + ")"; break;
        case Op::EF: n.key = "EF[" + n.lang.name + "] " + n.left->key; break;
        case Op::AG: n.key = "AG[" + n.lang.name + "] " + n.left->key; break;
    }
    return std::make_shared<const Node>(std::move(n));
}

}  // namespace

Formula f_false() {
    static const Formula f = make(node(Op::False));
    return f;
}

Formula f_true() {
    static const Formula f = make(node(Op::True));
    return f;
}

Formula f_lit(std::string prop, bool negated) {
    Node n = node(Op::Lit);
    n.prop = std::move(prop);
    n.negated = negated;
    return make(std::move(n));
}

Formula f_or(Formula a, Formula b) {
    Node n = node(Op::Or);
    n.left = std::move(a);
    n.right = std::move(b);
    return make(std::move(n));
}

Formula f_and(Formula a, Formula b) {
    Node n = node(Op::And);
    n.left = std::move(a);
    n.right = std::move(b);
    return make(std::move(n));
}

Formula f_modal(Op op, LanguageRef l, Formula body) {
    Node n = node(op);
    if (l.name.find(']') != std::string::npos) throw Error("language name '" + l.name + "' contains ']'");
    n.lang = std::move(l);
    n.left = std::move(body);
    return make(std::move(n));
}

Formula f_ef(LanguageRef l, Formula body) { return f_modal(Op::EF, std::move(l), std::move(body)); }
Formula f_ag(LanguageRef l, Formula body) { return f_modal(Op::AG, std::move(l), std::move(body)); }

Formula f_or_all(const std::vector<Formula>& fs) {
    if (fs.empty()) return f_false();
    Formula out = fs[0];
    for (std::size_t i = 1; i < fs.size(); ++i) out = f_or(out, fs[i]);
    return out;
}

Formula f_and_all(const std::vector<Formula>& fs) {
    if (fs.empty()) return f_true();
    Formula out = fs[0];
    for (std::size_t i = 1; i < fs.size(); ++i) out = f_and(out, fs[i]);
    return out;
}

namespace {

class Parser {
public:
    Parser(std::string_view s, const Environment& env) : s_(s), env_(env) {}

    Formula parse() {
        Formula f = formula();
        ws();
        if (pos_ != s_.size()) fail("trailing input");
        return f;
    }

private:
    [[noreturn]] void fail(const std::string& what) { throw ParseError(what, pos_); }

    void ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(std::string_view tok) {
        ws();
        if (s_.substr(pos_, tok.size()) != tok) return false;
        pos_ += tok.size();
        return true;
    }

    std::string ident() {
        ws();
        std::size_t b = pos_;
        auto ok = [&](char c, bool first) {
            return std::isalpha(static_cast<unsigned char>(c)) || c == '_' ||
                   (!first && std::isdigit(static_cast<unsigned char>(c)));
        };
        while (pos_ < s_.size() && ok(s_[pos_], pos_ == b)) ++pos_;
        if (b == pos_) fail("expected a formula");
        return std::string(s_.substr(b, pos_ - b));
    }

    Formula formula() {
        ws();
        if (pos_ >= s_.size()) fail("unexpected end of formula");
        if (eat("(")) {
            std::vector<Formula> parts{formula()};
            ws();
            if (pos_ >= s_.size()) fail("missing ')'");
            char sep = s_[pos_];
            if (sep != '|' && sep != '&') fail("expected '|' or '&'");
            while (eat(std::string_view(&sep, 1))) parts.push_back(formula());
            if (!eat(")")) fail("expected ')'");
            return sep == '|' ? f_or_all(parts) : f_and_all(parts);
        }
        if (eat("!")) {
            std::string p = ident();
            if (p == "true" || p == "false" || p == "EF" || p == "AG") fail("negation applies to propositions only");
            return f_lit(p, true);
        }
        for (Op op : {Op::EF, Op::AG}) {
            std::string_view kw = op == Op::EF ? "EF[" : "AG[";
            ws();
            if (s_.substr(pos_, kw.size()) != kw) continue;
            pos_ += kw.size();
            std::size_t close = s_.find(']', pos_);
            if (close == std::string_view::npos) fail("missing ']'");
            std::string name(s_.substr(pos_, close - pos_));
            std::size_t at = pos_;
            pos_ = close + 1;
            if (!env_.contains(name)) throw ParseError("unknown language '" + name + "'", at);
            Formula body = formula();
            return f_modal(op, LanguageRef{name, env_.lookup(name)}, body);
        }
        std::string id = ident();
        if (id == "true") return f_true();
        if (id == "false") return f_false();
        return f_lit(id);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    const Environment& env_;
};

}  // namespace

Formula parse_formula(std::string_view text, const Environment& env) { return Parser(text, env).parse(); }

Formula nnf_negate(const Formula& f) {
    switch (f->op) {
        case Op::False: return f_true();
        case Op::True: return f_false();
        case Op::Lit: return f_lit(f->prop, !f->negated);
        case Op::Or: return f_and(nnf_negate(f->left), nnf_negate(f->right));
        case Op::And: return f_or(nnf_negate(f->left), nnf_negate(f->right));
        case Op::EF: return f_ag(f->lang, nnf_negate(f->body()));
        case Op::AG: return f_ef(f->lang, nnf_negate(f->body()));
    }
    return f;
}

Formula f_implies(const Formula& a, const Formula& b) { return f_or(nnf_negate(a), b); }

std::set<std::string> props(const Formula& f) {
    std::set<std::string> out;
    std::vector<const Node*> stack{f.get()};
    while (!stack.empty()) {
        const Node* n = stack.back();
        stack.pop_back();
        if (n->op == Op::Lit) out.insert(n->prop);
        if (n->left) stack.push_back(n->left.get());
        if (n->right) stack.push_back(n->right.get());
    }
    return out;
}

std::vector<LangPtr> languages(const Formula& f) {
    std::vector<LangPtr> out;
    std::set<const Language*> seen;
    auto go = [&](auto&& self, const Node* n) -> void {
        if (n->is_modal() && seen.insert(n->lang.lang.get()).second) out.push_back(n->lang.lang);
        if (n->left) self(self, n->left.get());
        if (n->right) self(self, n->right.get());
    };
    go(go, f.get());
    return out;
}

std::size_t count_ops(const Formula& f, Op op) {
    std::size_t n = f->op == op ? 1 : 0;
    if (f->left) n += count_ops(f->left, op);
    if (f->right) n += count_ops(f->right, op);
    return n;
}

bool equal(const Formula& a, const Formula& b) { return a->key == b->key; }

}  // namespace pdlsep
