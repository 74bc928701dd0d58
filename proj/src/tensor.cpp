#include "treelie/tensor.hpp"

#include <algorithm>

#include "treelie/errors.hpp"

namespace treelie {

TensorKey pack(const std::vector<BasisLabel>& tuple) {
    if (tuple.size() > static_cast<std::size_t>(kMaxArity)) throw ArgumentError("tensor arity above 8");
    TensorKey k = 0;
    for (BasisLabel x : tuple) k = (k << 8) | static_cast<TensorKey>(x.code());
    return k;
}

std::vector<BasisLabel> unpack(TensorKey key, int arity) {
    std::vector<BasisLabel> r(arity);
    for (int i = arity - 1; i >= 0; --i) {
        r[i] = BasisLabel::from_code(static_cast<int>(key & 0xff));
        key >>= 8;
    }
    return r;
}

TensorVec::TensorVec(int arity) : arity_(arity) {
    if (arity < 0 || arity > kMaxArity) throw ArgumentError("tensor arity out of range");
}

void TensorVec::add(TensorKey k, const Integer& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.try_emplace(k, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

void TensorVec::add(const std::vector<BasisLabel>& tuple, const Integer& c) {
    if (static_cast<int>(tuple.size()) != arity_) throw ArgumentError("tuple arity mismatch");
    add(pack(tuple), c);
}

void TensorVec::add(const TensorVec& o, const Integer& c) {
    if (o.is_zero()) return;
    if (is_zero() && arity_ != o.arity_) arity_ = o.arity_;
    if (o.arity_ != arity_) throw ArgumentError("tensor arity mismatch");
    for (const auto& [k, v] : o.terms_) add(k, c * v);
}

Integer TensorVec::coeff(TensorKey k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Integer(0) : it->second;
}

std::string to_string(const TensorVec& v) {
    std::vector<std::pair<std::string, std::string>> lines;
    for (const auto& [k, c] : v.terms()) {
        std::string t;
        for (BasisLabel x : unpack(k, v.arity())) {
            if (!t.empty()) t += ",";
            t += to_string(x);
        }
        lines.emplace_back(t, c.str());
    }
    std::sort(lines.begin(), lines.end());
    std::string out;
    for (const auto& [t, c] : lines) out += c + "\t" + t + "\n";
    return out;
}

// ---------------------------------------------------------------- expansion

namespace {

struct Poly {
    int len = 0;
    std::vector<std::pair<TensorKey, std::int64_t>> terms;
};

int slot_of(const TreeTerm::Node& n, int who) {
    for (int i = 0; i < 3; ++i)
        if (n.nbr[i] == who) return i;
    return -1;
}

void normalize(std::vector<std::pair<TensorKey, std::int64_t>>& v) {
    std::sort(v.begin(), v.end());
    std::size_t w = 0;
    for (std::size_t r = 0; r < v.size();) {
        TensorKey k = v[r].first;
        std::int64_t c = 0;
        while (r < v.size() && v[r].first == k) c += v[r++].second;
        if (c != 0) v[w++] = {k, c};
    }
    v.resize(w);
}

// Lie polynomial of the branch at v seen from parent p; (p, c1, c2) -> [c2, c1]
Poly branch(const TreeTerm& t, int v, int p) {
    const auto& n = t.nodes[v];
    if (n.leaf) return {1, {{static_cast<TensorKey>(n.label.code()), 1}}};
    int s = slot_of(n, p);
    Poly x = branch(t, n.nbr[(s + 1) % 3], v);
    Poly y = branch(t, n.nbr[(s + 2) % 3], v);
    Poly r;
    r.len = x.len + y.len;
    r.terms.reserve(2 * x.terms.size() * y.terms.size());
    for (const auto& [wy, cy] : y.terms)
        for (const auto& [wx, cx] : x.terms) {
            r.terms.emplace_back((wy << (8 * x.len)) | wx, cy * cx);
            r.terms.emplace_back((wx << (8 * y.len)) | wy, -cy * cx);
        }
    normalize(r.terms);
    return r;
}

std::vector<std::pair<TensorKey, std::int64_t>> expand_term(const TreeTerm& t) {
    std::vector<std::pair<TensorKey, std::int64_t>> out;
    const int m = t.leaf_count();
    for (int x : t.leaf_ids()) {
        Poly p = branch(t, t.nodes[x].nbr[0], x);
        TensorKey head = static_cast<TensorKey>(t.nodes[x].label.code()) << (8 * (m - 1));
        for (const auto& [w, c] : p.terms) out.emplace_back(head | w, c);
    }
    normalize(out);
    return out;
}

}  // namespace

std::vector<std::pair<TensorKey, std::int64_t>> expand_key(const std::string& key) {
    return expand_term(decode_key(key));
}

TensorVec expand(const TreeTerm& t) {
    TensorVec r(t.leaf_count());
    for (const auto& [k, c] : expand_term(t)) r.add(k, c);
    return r;
}

TensorVec expand(const TreeSum& s) {
    TensorVec r(s.degree() < 0 ? 0 : s.degree() + 2);
    for (const auto& [key, c] : s.terms())
        for (const auto& [k, v] : expand_key(key)) r.add(k, c * v);
    return r;
}

bool eq_rational(const TreeSum& s, const TreeSum& t) {
    if (s.degree() >= 0 && t.degree() >= 0 && s.degree() != t.degree())
        throw DomainError("eq_rational on different degrees");
    return expand(s) == expand(t);
}

TreeSum project_color(const TreeSum& s, int i, int j) {
    TreeSum r;
    if (s.degree() >= 0 && i + j != s.degree() + 2)
        throw DomainError("color weight does not match degree");
    for (const auto& [key, c] : s.terms())
        if (key_color_weight(key) == std::make_pair(i, j)) r.add_key(key, c);
    return r;
}

TensorVec contract_12(const TensorVec& v) {
    if (v.arity() < 2) throw ArgumentError("contract_12 needs arity >= 2");
    const int m = v.arity();
    TensorVec r(m - 2);
    const TensorKey low = m - 2 == 0 ? 0 : (~TensorKey(0) >> (64 - 8 * (m - 2)));
    for (const auto& [k, c] : v.terms()) {
        int w = omega(key_label(k, m, 0), key_label(k, m, 1));
        if (w != 0) r.add(k & low, w * c);
    }
    return r;
}

TensorVec tensor_product(const TensorVec& u, const TensorVec& v) {
    if (u.arity() + v.arity() > kMaxArity) throw ArgumentError("tensor product arity above 8");
    TensorVec r(u.arity() + v.arity());
    for (const auto& [ku, cu] : u.terms())
        for (const auto& [kv, cv] : v.terms()) r.add((ku << (8 * v.arity())) | kv, cu * cv);
    return r;
}

std::vector<std::pair<BasisLabel, RootedTree>> rooted_expansion(const TreeTerm& t) {
    std::vector<std::pair<BasisLabel, RootedTree>> r;
    for (int x : t.leaf_ids()) r.emplace_back(t.nodes[x].label, RootedTree{t, x});
    return r;
}

TreeSum dynkin_lab(const TensorVec& v) {
    TreeSum out;
    const int m = v.arity();
    if (m < 3) throw ArgumentError("dynkin_lab needs arity >= 3");
    for (const auto& [k, c] : v.terms()) {
        auto xs = unpack(k, m);
        // root leaf 0, then the left-normed comb on xs[1..]
        TreeTerm t;
        t.nodes.resize(2 * m - 2);
        int next_leaf = 1, next_int = m;
        auto new_leaf = [&](BasisLabel l) {
            int id = next_leaf++;
            t.nodes[id].leaf = true;
            t.nodes[id].label = l;
            return id;
        };
        t.nodes[0].leaf = true;
        t.nodes[0].label = xs[0];
        // [X, Y] is the vertex (parent, Y, X)
        int cur = new_leaf(xs[1]);
        for (int i = 2; i < m; ++i) {
            int y = new_leaf(xs[i]);
            int v = next_int++;
            t.nodes[v].nbr = {-1, y, cur};
            t.nodes[y].nbr[0] = v;
            t.nodes[cur].nbr[0] = v;
            cur = v;
        }
        t.nodes[cur].nbr[0] = 0;
        t.nodes[0].nbr[0] = cur;
        out.add(t, c);
    }
    return out;
}

}  // namespace treelie
