#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "treelie/integer.hpp"
#include "treelie/symplectic.hpp"
#include "treelie/tree.hpp"

namespace treelie {

/// A tuple of up to 8 labels packed one byte each, first label most significant,
/// so integer order on keys of one arity is lexicographic order on tuples.
using TensorKey = std::uint64_t;

inline constexpr int kMaxArity = 8;

TensorKey pack(const std::vector<BasisLabel>& tuple);
std::vector<BasisLabel> unpack(TensorKey key, int arity);
inline BasisLabel key_label(TensorKey key, int arity, int slot) {
    return BasisLabel::from_code(static_cast<int>((key >> (8 * (arity - 1 - slot))) & 0xff));
}

/// Sparse vector in H^{⊗m}.
class TensorVec {
public:
    using Map = std::map<TensorKey, Integer>;

    explicit TensorVec(int arity = 0);

    int arity() const { return arity_; }
    void add(TensorKey k, const Integer& c);
    void add(const std::vector<BasisLabel>& tuple, const Integer& c);
    void add(const TensorVec& o, const Integer& c = 1);
    Integer coeff(TensorKey k) const;

    const Map& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    TensorVec& operator+=(const TensorVec& o) {
        add(o);
        return *this;
    }
    TensorVec& operator-=(const TensorVec& o) {
        add(o, -1);
        return *this;
    }
    friend TensorVec operator+(TensorVec x, const TensorVec& y) { return x += y; }
    friend TensorVec operator-(TensorVec x, const TensorVec& y) { return x -= y; }
    friend TensorVec operator*(const Integer& c, const TensorVec& x) {
        TensorVec r(x.arity_);
        r.add(x, c);
        return r;
    }
    friend bool operator==(const TensorVec& x, const TensorVec& y) {
        return x.terms_ == y.terms_ && (x.terms_.empty() || x.arity_ == y.arity_);
    }

private:
    int arity_;
    Map terms_;
};

/// Debug format: one `coef<TAB>label,label,...` line per entry, sorted by tuple text.
std::string to_string(const TensorVec& v);

/// Expansion of a single canonical tree with small integer coefficients, sorted by key.
std::vector<std::pair<TensorKey, std::int64_t>> expand_key(const std::string& key);

/// η: sum over leaves x of l_x ⊗ (bracket expansion of the tree rooted at x),
/// where a vertex with children (p,q) reads as [q,p].
TensorVec expand(const TreeSum& s);
TensorVec expand(const TreeTerm& t);

/// Equality in A_k(H) ⊗ Q, certified by expansion. Throws DomainError on degree mismatch.
bool eq_rational(const TreeSum& s, const TreeSum& t);

/// Keeps the terms of color weight (i,j). Throws DomainError if i + j != k + 2.
TreeSum project_color(const TreeSum& s, int i, int j);

/// Σ coefficient · ω(x1,x2) · (x3,...,xm).
TensorVec contract_12(const TensorVec& v);

/// u ⊗ v (arities add, at most 8).
TensorVec tensor_product(const TensorVec& u, const TensorVec& v);

/// The k+2 rooted trees T^x paired with the labels l_x.
std::vector<std::pair<BasisLabel, RootedTree>> rooted_expansion(const TreeTerm& t);

/// Σ c · Lab(x1, ρ(x2...xm)) with ρ the left-normed bracket [[x2,x3],...,xm]
/// realised as a rooted tree. On η(T) this gives (k+1)(k+2)·T modulo IHX.
TreeSum dynkin_lab(const TensorVec& v);

}  // namespace treelie
