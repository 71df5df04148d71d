#include "pdlsep/lts.hpp"

#include <algorithm>
#include <sstream>

namespace pdlsep {

int Lts::add_state(const std::string& name, std::set<std::string> props) {
    names.push_back(name);
    labels.push_back(std::move(props));
    succ.emplace_back();
    return size() - 1;
}

std::optional<int> Lts::find(const std::string& name) const {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) return std::nullopt;
    return static_cast<int>(it - names.begin());
}

std::size_t Lts::edge_count() const {
    std::size_t n = 0;
    for (const auto& s : succ) n += s.size();
    return n;
}

bool Lts::is_acyclic() const {
    std::vector<int> color(size(), 0);
    auto dfs = [&](auto&& self, int s) -> bool {
        color[s] = 1;
        for (auto [a, t] : succ[s]) {
            if (color[t] == 1) return false;
            if (color[t] == 0 && !self(self, t)) return false;
        }
        color[s] = 2;
        return true;
    };
    for (int s = 0; s < size(); ++s)
        if (color[s] == 0 && !dfs(dfs, s)) return false;
    return true;
}

std::size_t Lts::longest_path() const {
    std::vector<std::optional<std::size_t>> memo(size());
    auto go = [&](auto&& self, int s) -> std::size_t {
        if (memo[s]) return *memo[s];
        std::size_t best = 0;
        for (auto [a, t] : succ[s]) best = std::max(best, 1 + self(self, t));
        memo[s] = best;
        return best;
    };
    std::size_t out = 0;
    for (int s = 0; s < size(); ++s) out = std::max(out, go(go, s));
    return out;
}

Structure parse_structure(std::string_view text) {
    Structure m;
    std::optional<std::string> root;
    std::istringstream is{std::string(text)};
    std::size_t lineno = 0;
    auto state = [&](const std::string& n) {
        auto s = m.lts.find(n);
        if (!s) throw ParseError("undeclared state '" + n + "'", lineno);
        return *s;
    };
    for (std::string line; std::getline(is, line);) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::vector<std::string> t;
        for (std::string x; ls >> x;) t.push_back(x);
        if (t.empty()) continue;
        if (t[0] == "state" && (t.size() == 2 || (t.size() >= 3 && t[2] == "props"))) {
            if (m.lts.find(t[1])) throw ParseError("state '" + t[1] + "' declared twice", lineno);
            std::set<std::string> props;
            std::string joined;
            for (std::size_t i = 3; i < t.size(); ++i) joined += t[i] + ",";
            std::istringstream ps(joined);
            for (std::string p; std::getline(ps, p, ',');)
                if (!p.empty()) props.insert(p);
            m.lts.add_state(t[1], std::move(props));
        } else if (t[0] == "edge" && t.size() == 4) {
            if (t[2].size() != 1) throw ParseError("edge letters are single characters", lineno);
            m.lts.add_edge(state(t[1]), t[2][0], state(t[3]));
        } else if (t[0] == "root" && t.size() == 2) {
            root = t[1];
        } else {
            throw ParseError("expected 'state', 'edge' or 'root'", lineno);
        }
    }
    if (!root) throw ParseError("missing 'root' line", lineno);
    m.root = state(*root);
    return m;
}

std::string to_text(const Structure& m) {
    std::ostringstream os;
    for (int s = 0; s < m.lts.size(); ++s) {
        os << "state " << m.lts.names[s];
        if (!m.lts.labels[s].empty()) {
            os << " props ";
            bool first = true;
            for (const auto& p : m.lts.labels[s]) {
                os << (first ? "" : ",") << p;
                first = false;
            }
        }
        os << '\n';
    }
    for (int s = 0; s < m.lts.size(); ++s)
        for (auto [a, t] : m.lts.succ[s]) os << "edge " << m.lts.names[s] << ' ' << a << ' ' << m.lts.names[t] << '\n';
    os << "root " << m.lts.names[m.root] << '\n';
    return os.str();
}

Structure path_structure(const Word& w) {
    Structure m;
    for (std::size_t i = 0; i <= w.size(); ++i) m.lts.add_state("p" + std::to_string(i));
    for (std::size_t i = 0; i < w.size(); ++i) m.lts.add_edge(static_cast<int>(i), w[i], static_cast<int>(i + 1));
    m.root = 0;
    return m;
}

Structure oplus(const std::vector<Structure>& ms) {
    if (ms.empty()) throw Error("oplus needs at least one structure");
    Structure out;
    out.root = out.lts.add_state("r");
    for (std::size_t k = 0; k < ms.size(); ++k) {
        const auto& m = ms[k];
        std::vector<int> id(m.lts.size(), -1);
        id[m.root] = out.root;
        for (int s = 0; s < m.lts.size(); ++s)
            if (s != m.root) id[s] = out.lts.add_state(std::to_string(k) + "." + m.lts.names[s], m.lts.labels[s]);
        for (int s = 0; s < m.lts.size(); ++s)
            for (auto [a, t] : m.lts.succ[s]) out.lts.add_edge(id[s], a, id[t]);
    }
    return out;
}

bool is_extension(const Structure& m, const Structure& bigger) {
    if (m.lts.names[m.root] != bigger.lts.names[bigger.root]) return false;
    std::vector<int> id(m.lts.size());
    for (int s = 0; s < m.lts.size(); ++s) {
        auto t = bigger.lts.find(m.lts.names[s]);
        if (!t || bigger.lts.labels[*t] != m.lts.labels[s]) return false;
        id[s] = *t;
    }
    for (int s = 0; s < m.lts.size(); ++s)
        for (auto [a, t] : m.lts.succ[s]) {
            const auto& out = bigger.lts.succ[id[s]];
            if (std::find(out.begin(), out.end(), std::make_pair(a, id[t])) == out.end()) return false;
        }
    return true;
}

TreePtr make_tree(std::uint32_t label, std::vector<std::pair<Letter, TreePtr>> children) {
    auto t = std::make_shared<Tree>();
    std::sort(children.begin(), children.end(), [](const auto& x, const auto& y) {
        if (x.first != y.first) return x.first < y.first;
        return x.second->key < y.second->key;
    });
    t->label = label;
    t->key = (label ? std::to_string(label) : std::string()) + "(";
    for (const auto& [a, c] : children) {
        t->key += a;
        t->key += c->key;
        t->depth = std::max(t->depth, c->depth + 1);
        t->nodes += c->nodes;
    }
    t->key += ")";
    t->children = std::move(children);
    return t;
}

Structure tree_structure(const TreePtr& t, const std::vector<std::string>& props) {
    Structure m;
    auto labels = [&](std::uint32_t mask) {
        std::set<std::string> out;
        for (std::size_t i = 0; i < props.size(); ++i)
            if (mask >> i & 1u) out.insert(props[i]);
        return out;
    };
    std::vector<std::pair<const Tree*, int>> queue{{t.get(), m.lts.add_state("n0", labels(t->label))}};
    for (std::size_t i = 0; i < queue.size(); ++i) {
        auto [node, id] = queue[i];
        for (const auto& [a, c] : node->children) {
            int child = m.lts.add_state("n" + std::to_string(m.lts.size()), labels(c->label));
            m.lts.add_edge(id, a, child);
            queue.push_back({c.get(), child});
        }
    }
    m.root = 0;
    return m;
}

TreePtr structure_tree(const Structure& m, const std::vector<std::string>& props) {
    std::vector<bool> seen(m.lts.size(), false);
    auto go = [&](auto&& self, int s) -> TreePtr {
        if (seen[s]) throw Error("structure is not a tree");
        seen[s] = true;
        std::uint32_t label = 0;
        for (std::size_t i = 0; i < props.size(); ++i)
            if (m.lts.labels[s].count(props[i])) label |= 1u << i;
        std::vector<std::pair<Letter, TreePtr>> kids;
        for (auto [a, t] : m.lts.succ[s]) kids.push_back({a, self(self, t)});
        return make_tree(label, std::move(kids));
    };
    return go(go, m.root);
}

std::vector<TreePtr> enum_trees(const LetterSet& letters, std::size_t depth, std::size_t branching,
                                std::size_t prop_count, std::size_t cap) {
    if (prop_count > 16) throw CapExceeded("too many propositions for tree enumeration");
    const std::uint32_t nlabels = 1u << prop_count;
    std::vector<TreePtr> level;
    for (std::uint32_t l = 0; l < nlabels; ++l) level.push_back(make_tree(l, {}));
    for (std::size_t d = 1; d <= depth; ++d) {
        std::vector<std::pair<Letter, TreePtr>> items;
        for (Letter a : letters)
            for (const auto& t : level) items.push_back({a, t});
        std::vector<TreePtr> next;
        std::vector<std::size_t> pick;
        // Nondecreasing index sequences of length <= branching enumerate the
        // multisets of children exactly once.
        auto emit = [&] {
            std::vector<std::pair<Letter, TreePtr>> kids;
            for (auto i : pick) kids.push_back(items[i]);
            for (std::uint32_t l = 0; l < nlabels; ++l) {
                if (next.size() >= cap) throw CapExceeded("tree enumeration exceeds " + std::to_string(cap));
                next.push_back(make_tree(l, kids));
            }
        };
        auto go = [&](auto&& self, std::size_t from) -> void {
            emit();
            if (pick.size() == branching) return;
            for (std::size_t i = from; i < items.size(); ++i) {
                pick.push_back(i);
                self(self, i);
                pick.pop_back();
            }
        };
        go(go, 0);
        level = std::move(next);
    }
    return level;
}

std::uint64_t count_trees(std::size_t letters, std::size_t depth, std::size_t branching) {
    std::uint64_t t = 1;
    for (std::size_t d = 0; d < depth; ++d) {
        const std::uint64_t k = letters * t;
        // Σ_{j<=b} C(k+j-1, j)
        std::uint64_t total = 0, c = 1;
        for (std::size_t j = 0; j <= branching; ++j) {
            if (j > 0) c = c * (k + j - 1) / j;
            total += c;
        }
        t = total;
    }
    return t;
}

}  // namespace pdlsep
