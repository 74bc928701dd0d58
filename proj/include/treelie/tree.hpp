#pragma once

#include <array>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "treelie/integer.hpp"
#include "treelie/symplectic.hpp"

namespace treelie {

inline constexpr int kDefaultMaxDegree = 4;
inline constexpr int kMaxSupportedDegree = 6;  // tensor keys pack k+2 <= 8 labels

/// Uni-trivalent tree as a plain graph. Internal vertices list their three
/// neighbours in cyclic order; leaves use nbr[0] only.
struct TreeTerm {
    struct Node {
        bool leaf = false;
        BasisLabel label{};
        std::array<int, 3> nbr{-1, -1, -1};
    };
    std::vector<Node> nodes;

    int degree() const;
    int leaf_count() const;
    std::vector<int> leaf_ids() const;
    std::vector<BasisLabel> labels() const;  // leaf labels in node order
    /// Throws ArgumentError unless the graph is a connected uni-trivalent tree.
    void validate() const;
};

/// Caterpillar t(x1,...,xn): x1,x2 on the first internal vertex, xn on the last.
TreeTerm parse_caterpillar(const std::vector<BasisLabel>& labels, int max_degree = kDefaultMaxDegree);

/// AS-canonical serialization with its sign. sign == 0 means the tree is
/// AS-degenerate and `key` is empty.
struct Canonical {
    std::string key;
    int sign = 0;
};

Canonical as_canonical(const TreeTerm& t);

/// Rebuilds the tree stored under a canonical key (with the key's orientation).
TreeTerm decode_key(const std::string& key);
int key_degree(const std::string& key);
std::vector<BasisLabel> key_labels(const std::string& key);

/// Integer combination of canonical trees of one degree.
class TreeSum {
public:
    using Map = std::map<std::string, Integer>;

    TreeSum() = default;
    explicit TreeSum(const TreeTerm& t, const Integer& c = 1) { add(t, c); }

    void add(const TreeTerm& t, const Integer& c = 1);
    /// Adds c * (tree under canonical key). The key must be canonical.
    void add_key(const std::string& key, const Integer& c);
    void add(const TreeSum& o, const Integer& c = 1);

    const Map& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    int degree() const { return degree_; }  // -1 when zero and never set

    TreeSum& operator+=(const TreeSum& o) {
        add(o);
        return *this;
    }
    TreeSum& operator-=(const TreeSum& o) {
        add(o, -1);
        return *this;
    }
    friend TreeSum operator+(TreeSum x, const TreeSum& y) { return x += y; }
    friend TreeSum operator-(TreeSum x, const TreeSum& y) { return x -= y; }
    friend TreeSum operator-(TreeSum x) {
        TreeSum r;
        r.add(x, -1);
        return r;
    }
    friend TreeSum operator*(const Integer& c, const TreeSum& x) {
        TreeSum r;
        r.add(x, c);
        return r;
    }
    // symbolic equality modulo AS only; use eq_rational for A_k(H) equality
    friend bool operator==(const TreeSum& x, const TreeSum& y) { return x.terms_ == y.terms_; }

private:
    void set_degree(int k);
    Map terms_;
    int degree_ = -1;
};

/// c * t(labels...) as a canonical sum.
TreeSum cat(const std::vector<BasisLabel>& labels, const Integer& c = 1);

/// Every way of reading a tree as sign * t(x1..xn). Empty for non-caterpillars.
std::vector<std::pair<std::vector<BasisLabel>, int>> caterpillar_readings(const TreeTerm& t);

/// Text form: caterpillars as t(...), other shapes as r(root,nested pairs).
std::pair<std::string, Integer> display_term(const std::string& key, const Integer& c);
std::string to_string(const TreeSum& s);

/// [T1,T2] = sum over x in T1, y in T2 of ω(l_x,l_y) T1 -xy- T2. Throws DomainError
/// if the degree exceeds max_degree.
TreeSum bracket(const TreeSum& s, const TreeSum& t, int max_degree = kDefaultMaxDegree);

/// Glue leaf x of s to leaf y of t (node ids). No weight applied.
TreeTerm glue(const TreeTerm& s, int x, const TreeTerm& t, int y);

TreeSum jacobi_defect(const TreeSum& x, const TreeSum& y, const TreeSum& z,
                      int max_degree = kDefaultMaxDegree);

/// Tree with a distinguished leaf; the root's label is ignored.
struct RootedTree {
    TreeTerm tree;
    int root = -1;
};

/// Labels the root of r with u (linear in u).
TreeSum lab(const HVector& u, const RootedTree& r);

/// Substitutes each leaf label by an element of H and expands multilinearly.
TreeSum substitute(const TreeSum& s, const std::function<HVector(BasisLabel)>& f);

/// Internal edges (u,v), u < v.
std::vector<std::pair<int, int>> internal_edges(const TreeTerm& t);

/// IHX at internal edge (u,v): with u = (v,A,B) and v = (u,C,D) in cyclic order,
/// t = first + second where first has u = (v,A,C), v = (u,B,D) and second has
/// u = (v,C,B), v = (u,A,D).
std::pair<TreeTerm, TreeTerm> ihx_move(const TreeTerm& t, int u, int v);

/// Color weight (number of A-leaves, number of B-leaves).
std::pair<int, int> color_weight(const TreeTerm& t);
std::pair<int, int> key_color_weight(const std::string& key);

}  // namespace treelie
