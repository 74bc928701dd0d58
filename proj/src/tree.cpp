#include "treelie/tree.hpp"

#include <algorithm>

#include "treelie/errors.hpp"

namespace treelie {

namespace {

constexpr char kOpen = 0x01;
constexpr char kClose = 0x02;

char label_byte(BasisLabel x) { return static_cast<char>(0x10 + x.code()); }
BasisLabel byte_label(char c) { return BasisLabel::from_code(static_cast<unsigned char>(c) - 0x10); }

int slot_of(const TreeTerm::Node& n, int who) {
    for (int i = 0; i < 3; ++i)
        if (n.nbr[i] == who) return i;
    return -1;
}

// children of internal vertex v seen from parent p, in cyclic order
std::pair<int, int> children(const TreeTerm& t, int v, int p) {
    const auto& n = t.nodes[v];
    int k = slot_of(n, p);
    return {n.nbr[(k + 1) % 3], n.nbr[(k + 2) % 3]};
}

// Sorted encoding of the branch at v hanging from p. false if two sibling
// branches coincide (AS kills the tree).
bool encode(const TreeTerm& t, int v, int p, std::string& out, int& sign) {
    const auto& n = t.nodes[v];
    if (n.leaf) {
        out.push_back(label_byte(n.label));
        return true;
    }
    auto [c1, c2] = children(t, v, p);
    std::string s1, s2;
    if (!encode(t, c1, v, s1, sign) || !encode(t, c2, v, s2, sign)) return false;
    int cmp = s1.compare(s2);
    if (cmp == 0) return false;
    out.push_back(kOpen);
    if (cmp < 0) {
        out += s1;
        out += s2;
    } else {
        sign = -sign;
        out += s2;
        out += s1;
    }
    out.push_back(kClose);
    return true;
}

int decode_branch(const std::string& key, std::size_t& pos, int parent, TreeTerm& t) {
    if (pos >= key.size()) throw ArgumentError("truncated tree key");
    int id = static_cast<int>(t.nodes.size());
    t.nodes.emplace_back();
    if (key[pos] != kOpen) {
        t.nodes[id].leaf = true;
        t.nodes[id].label = byte_label(key[pos++]);
        t.nodes[id].nbr[0] = parent;
        return id;
    }
    ++pos;
    int c1 = decode_branch(key, pos, id, t);
    int c2 = decode_branch(key, pos, id, t);
    if (pos >= key.size() || key[pos] != kClose) throw ArgumentError("malformed tree key");
    ++pos;
    t.nodes[id].nbr = {parent, c1, c2};
    return id;
}

}  // namespace

// ---------------------------------------------------------------- TreeTerm

int TreeTerm::degree() const {
    return static_cast<int>(std::count_if(nodes.begin(), nodes.end(), [](const Node& n) { return !n.leaf; }));
}

int TreeTerm::leaf_count() const { return static_cast<int>(nodes.size()) - degree(); }

std::vector<int> TreeTerm::leaf_ids() const {
    std::vector<int> r;
    for (int i = 0; i < static_cast<int>(nodes.size()); ++i)
        if (nodes[i].leaf) r.push_back(i);
    return r;
}

std::vector<BasisLabel> TreeTerm::labels() const {
    std::vector<BasisLabel> r;
    for (const auto& n : nodes)
        if (n.leaf) r.push_back(n.label);
    return r;
}

void TreeTerm::validate() const {
    const int n = static_cast<int>(nodes.size());
    int k = degree();
    if (k < 1 || n != 2 * k + 2) throw ArgumentError("not a uni-trivalent tree: wrong vertex count");
    for (int v = 0; v < n; ++v) {
        int val = nodes[v].leaf ? 1 : 3;
        for (int i = 0; i < val; ++i) {
            int w = nodes[v].nbr[i];
            if (w < 0 || w >= n || w == v) throw ArgumentError("bad neighbour index");
            if (slot_of(nodes[w], v) < 0) throw ArgumentError("asymmetric adjacency");
        }
        if (!nodes[v].leaf) {
            auto& nb = nodes[v].nbr;
            if (nb[0] == nb[1] || nb[1] == nb[2] || nb[0] == nb[2]) throw ArgumentError("multi-edge");
        }
    }
    // n-1 edges by construction, so connected <=> acyclic
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        int val = nodes[v].leaf ? 1 : 3;
        for (int i = 0; i < val; ++i) {
            int w = nodes[v].nbr[i];
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                stack.push_back(w);
            }
        }
    }
    if (count != n) throw ArgumentError("tree is not connected");
}

TreeTerm parse_caterpillar(const std::vector<BasisLabel>& labels, int max_degree) {
    const int n = static_cast<int>(labels.size());
    if (n < 3 || n - 2 > std::min(max_degree, kMaxSupportedDegree))
        throw DomainError("caterpillar needs between 3 and " +
                          std::to_string(std::min(max_degree, kMaxSupportedDegree) + 2) + " labels");
    const int k = n - 2;
    TreeTerm t;
    t.nodes.resize(2 * k + 2);
    // nodes 0..n-1 leaves, n..n+k-1 internal v1..vk
    for (int i = 0; i < n; ++i) {
        t.nodes[i].leaf = true;
        t.nodes[i].label = labels[i];
    }
    auto v = [n](int i) { return n + i - 1; };
    auto link_leaf = [&](int leaf, int vert) { t.nodes[leaf].nbr[0] = vert; };
    if (k == 1) {
        t.nodes[v(1)].nbr = {0, 1, 2};
        for (int i = 0; i < 3; ++i) link_leaf(i, v(1));
        return t;
    }
    t.nodes[v(1)].nbr = {0, 1, v(2)};
    link_leaf(0, v(1));
    link_leaf(1, v(1));
    for (int i = 2; i < k; ++i) {
        t.nodes[v(i)].nbr = {v(i - 1), i, v(i + 1)};
        link_leaf(i, v(i));
    }
    t.nodes[v(k)].nbr = {v(k - 1), n - 2, n - 1};
    link_leaf(n - 2, v(k));
    link_leaf(n - 1, v(k));
    return t;
}

Canonical as_canonical(const TreeTerm& t) {
    char least = '\xff';
    for (const auto& n : t.nodes)
        if (n.leaf) least = std::min(least, label_byte(n.label), [](char x, char y) {
            return static_cast<unsigned char>(x) < static_cast<unsigned char>(y);
        });
    // Every automorphism preserves the set of least-labelled leaves, so rooting
    // there is enough to find both the minimum and any sign-reversing symmetry.
    Canonical best;
    bool have = false;
    std::vector<std::pair<std::string, int>> seen;
    for (int r = 0; r < static_cast<int>(t.nodes.size()); ++r) {
        const auto& n = t.nodes[r];
        if (!n.leaf || label_byte(n.label) != least) continue;
        std::string s(1, least);
        int sign = 1;
        if (!encode(t, n.nbr[0], r, s, sign)) return {};
        for (const auto& [k, sg] : seen)
            if (k == s && sg != sign) return {};
        if (!have || s < best.key) {
            best = {s, sign};
            have = true;
        }
        seen.emplace_back(std::move(s), sign);
    }
    return best;
}

TreeTerm decode_key(const std::string& key) {
    TreeTerm t;
    if (key.size() < 2) throw ArgumentError("empty tree key");
    t.nodes.emplace_back();
    t.nodes[0].leaf = true;
    t.nodes[0].label = byte_label(key[0]);
    std::size_t pos = 1;
    t.nodes[0].nbr[0] = decode_branch(key, pos, 0, t);
    if (pos != key.size()) throw ArgumentError("trailing bytes in tree key");
    return t;
}

int key_degree(const std::string& key) { return static_cast<int>(std::count(key.begin(), key.end(), kOpen)); }

std::vector<BasisLabel> key_labels(const std::string& key) {
    std::vector<BasisLabel> r;
    for (char c : key)
        if (c != kOpen && c != kClose) r.push_back(byte_label(c));
    return r;
}

std::pair<int, int> key_color_weight(const std::string& key) {
    int i = 0, j = 0;
    for (char c : key) {
        if (c == kOpen || c == kClose) continue;
        (byte_label(c).side == Side::A ? i : j)++;
    }
    return {i, j};
}

std::pair<int, int> color_weight(const TreeTerm& t) {
    int i = 0, j = 0;
    for (const auto& n : t.nodes)
        if (n.leaf) (n.label.side == Side::A ? i : j)++;
    return {i, j};
}

// ---------------------------------------------------------------- TreeSum

void TreeSum::set_degree(int k) {
    if (degree_ >= 0 && degree_ != k)
        throw DomainError("mixing degrees " + std::to_string(degree_) + " and " + std::to_string(k));
    degree_ = k;
}

void TreeSum::add(const TreeTerm& t, const Integer& c) {
    set_degree(t.degree());
    if (c == 0) return;
    Canonical can = as_canonical(t);
    if (can.sign == 0) return;
    add_key(can.key, can.sign > 0 ? c : Integer(-c));
}

void TreeSum::add_key(const std::string& key, const Integer& c) {
    set_degree(key_degree(key));
    if (c == 0) return;
    auto [it, fresh] = terms_.try_emplace(key, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

void TreeSum::add(const TreeSum& o, const Integer& c) {
    if (o.degree_ >= 0) set_degree(o.degree_);
    if (c == 0) return;
    for (const auto& [k, v] : o.terms_) add_key(k, c * v);
}

TreeSum cat(const std::vector<BasisLabel>& labels, const Integer& c) {
    return TreeSum(parse_caterpillar(labels, kMaxSupportedDegree), c);
}

// ---------------------------------------------------------------- printing

std::vector<std::pair<std::vector<BasisLabel>, int>> caterpillar_readings(const TreeTerm& t) {
    std::vector<std::pair<std::vector<BasisLabel>, int>> out;
    for (int r : t.leaf_ids()) {
        std::vector<BasisLabel> top{t.nodes[r].label};
        int sign = 1;
        int parent = r, v = t.nodes[r].nbr[0];
        while (true) {
            auto [c1, c2] = children(t, v, parent);
            bool l1 = t.nodes[c1].leaf, l2 = t.nodes[c2].leaf;
            if (l1 && l2) {
                std::vector<BasisLabel> seq{t.nodes[c1].label, t.nodes[c2].label};
                seq.insert(seq.end(), top.rbegin(), top.rend());
                out.emplace_back(seq, sign);
                std::swap(seq[0], seq[1]);
                out.emplace_back(seq, -sign);
                break;
            }
            if (!l1 && !l2) break;
            if (l1) {  // put the internal child first
                std::swap(c1, c2);
                sign = -sign;
            }
            top.push_back(t.nodes[c2].label);
            parent = v;
            v = c1;
        }
    }
    return out;
}

namespace {

std::string nested(const TreeTerm& t, int v, int p) {
    const auto& n = t.nodes[v];
    if (n.leaf) return to_string(n.label);
    auto [c1, c2] = children(t, v, p);
    return "(" + nested(t, c1, v) + "," + nested(t, c2, v) + ")";
}

}  // namespace

std::pair<std::string, Integer> display_term(const std::string& key, const Integer& c) {
    TreeTerm t = decode_key(key);
    auto readings = caterpillar_readings(t);
    if (readings.empty())
        return {"r(" + to_string(t.nodes[0].label) + "," + nested(t, t.nodes[0].nbr[0], 0) + ")", c};
    auto best = std::min_element(readings.begin(), readings.end(),
                                 [](const auto& x, const auto& y) { return x.first < y.first; });
    std::string body = "t(";
    for (std::size_t i = 0; i < best->first.size(); ++i) {
        if (i) body += ",";
        body += to_string(best->first[i]);
    }
    body += ")";
    return {body, best->second < 0 ? Integer(-c) : c};
}

std::string to_string(const TreeSum& s) {
    if (s.is_zero()) return "0";
    std::vector<std::pair<std::string, Integer>> parts;
    for (const auto& [k, c] : s.terms()) parts.push_back(display_term(k, c));
    std::sort(parts.begin(), parts.end());
    std::string out;
    for (const auto& [body, c] : parts) {
        if (out.empty()) out += c < 0 ? "-" : "";
        else out += c < 0 ? " - " : " + ";
        Integer m = abs(c);
        if (m != 1) out += m.str();
        out += body;
    }
    return out;
}

// ---------------------------------------------------------------- bracket

TreeTerm glue(const TreeTerm& s, int x, const TreeTerm& t, int y) {
    TreeTerm g;
    const int ns = static_cast<int>(s.nodes.size());
    const int nt = static_cast<int>(t.nodes.size());
    std::vector<int> ms(ns, -1), mt(nt, -1);
    int next = 0;
    for (int i = 0; i < ns; ++i)
        if (i != x) ms[i] = next++;
    for (int i = 0; i < nt; ++i)
        if (i != y) mt[i] = next++;
    g.nodes.resize(next);
    const int u = s.nodes[x].nbr[0];
    const int w = t.nodes[y].nbr[0];
    for (int i = 0; i < ns; ++i) {
        if (i == x) continue;
        auto n = s.nodes[i];
        for (auto& j : n.nbr)
            if (j >= 0) j = (j == x) ? mt[w] : ms[j];
        g.nodes[ms[i]] = n;
    }
    for (int i = 0; i < nt; ++i) {
        if (i == y) continue;
        auto n = t.nodes[i];
        for (auto& j : n.nbr)
            if (j >= 0) j = (j == y) ? ms[u] : mt[j];
        g.nodes[mt[i]] = n;
    }
    return g;
}

TreeSum bracket(const TreeSum& s, const TreeSum& t, int max_degree) {
    TreeSum out;
    if (s.degree() < 0 || t.degree() < 0) return out;
    const int k = s.degree() + t.degree();
    if (k > std::min(max_degree, kMaxSupportedDegree))
        throw DomainError("bracket degree " + std::to_string(k) + " exceeds max degree " +
                          std::to_string(max_degree));
    std::vector<std::pair<TreeTerm, const Integer*>> ts;
    for (const auto& [key, c] : t.terms()) ts.emplace_back(decode_key(key), &c);
    for (const auto& [key, c] : s.terms()) {
        TreeTerm a = decode_key(key);
        for (int x : a.leaf_ids()) {
            for (const auto& [bt, cb] : ts) {
                for (int y : bt.leaf_ids()) {
                    int w = omega(a.nodes[x].label, bt.nodes[y].label);
                    if (w == 0) continue;
                    out.add(glue(a, x, bt, y), w * c * *cb);
                }
            }
        }
    }
    if (out.is_zero()) {
        TreeSum z;
        return z;
    }
    return out;
}

TreeSum jacobi_defect(const TreeSum& x, const TreeSum& y, const TreeSum& z, int max_degree) {
    return bracket(bracket(x, y, max_degree), z, max_degree) +
           bracket(bracket(z, x, max_degree), y, max_degree) +
           bracket(bracket(y, z, max_degree), x, max_degree);
}

// ---------------------------------------------------------------- rooted / substitution

TreeSum lab(const HVector& u, const RootedTree& r) {
    if (r.root < 0 || r.root >= static_cast<int>(r.tree.nodes.size()) || !r.tree.nodes[r.root].leaf)
        throw ArgumentError("root must be a leaf");
    TreeSum out;
    TreeTerm t = r.tree;
    for (const auto& [x, c] : u.terms()) {
        t.nodes[r.root].label = x;
        out.add(t, c);
    }
    return out;
}

TreeSum substitute(const TreeSum& s, const std::function<HVector(BasisLabel)>& f) {
    TreeSum out;
    for (const auto& [key, c] : s.terms()) {
        TreeTerm t = decode_key(key);
        std::vector<int> leaves = t.leaf_ids();
        std::vector<std::vector<std::pair<BasisLabel, Integer>>> images;
        for (int l : leaves) {
            HVector h = f(t.nodes[l].label);
            images.emplace_back(h.terms().begin(), h.terms().end());
            if (images.back().empty()) break;
        }
        if (images.size() < leaves.size() || images.back().empty()) continue;
        // odometer over the multilinear expansion
        std::vector<std::size_t> pick(leaves.size(), 0);
        while (true) {
            Integer coef = c;
            for (std::size_t i = 0; i < leaves.size(); ++i) {
                t.nodes[leaves[i]].label = images[i][pick[i]].first;
                coef *= images[i][pick[i]].second;
            }
            out.add(t, coef);
            std::size_t i = 0;
            while (i < pick.size() && ++pick[i] == images[i].size()) pick[i++] = 0;
            if (i == pick.size()) break;
        }
    }
    return out;
}

// ---------------------------------------------------------------- IHX

std::vector<std::pair<int, int>> internal_edges(const TreeTerm& t) {
    std::vector<std::pair<int, int>> r;
    for (int u = 0; u < static_cast<int>(t.nodes.size()); ++u) {
        if (t.nodes[u].leaf) continue;
        for (int v : t.nodes[u].nbr)
            if (v > u && !t.nodes[v].leaf) r.emplace_back(u, v);
    }
    return r;
}

std::pair<TreeTerm, TreeTerm> ihx_move(const TreeTerm& t, int u, int v) {
    if (t.nodes[u].leaf || t.nodes[v].leaf || slot_of(t.nodes[u], v) < 0)
        throw ArgumentError("ihx_move needs an internal edge");
    auto [A, B] = children(t, u, v);
    auto [C, D] = children(t, v, u);
    auto build = [&](int u1, int u2, int v1, int v2) {
        TreeTerm r = t;
        r.nodes[u].nbr = {v, u1, u2};
        r.nodes[v].nbr = {u, v1, v2};
        auto attach = [&](int child, int to, int from_old) {
            auto& nb = r.nodes[child].nbr;
            for (auto& j : nb)
                if (j == from_old) {
                    j = to;
                    return;
                }
        };
        // each subtree root was attached to u (A,B) or v (C,D) originally
        auto origin = [&](int x) { return (x == A || x == B) ? u : v; };
        for (int x : {u1, u2})
            if (origin(x) != u) attach(x, u, origin(x));
        for (int x : {v1, v2})
            if (origin(x) != v) attach(x, v, origin(x));
        return r;
    };
    return {build(A, C, B, D), build(C, B, A, D)};
}

}  // namespace treelie
