#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "treelie/eigen_scalars.hpp"
#include "treelie/integer.hpp"
#include "treelie/symplectic.hpp"
#include "treelie/tensor.hpp"
#include "treelie/tree.hpp"

namespace treelie {

using IntMatrix = Eigen::Matrix<BigInt, Eigen::Dynamic, Eigen::Dynamic>;

/// Element of GL_g(Z) acting on H through the block matrix diag(G, G^{-T}):
/// a_j -> Σ_i G(i,j) a_i, b_j -> Σ_i G^{-T}(i,j) b_i.
class GLElement {
public:
    /// Throws ArgumentError unless m is square with det ±1.
    explicit GLElement(IntMatrix m);

    static GLElement identity(int genus);
    /// Id + sign·E_{i,j}: a_j -> a_j + sign·a_i, b_i -> b_i - sign·b_j.
    static GLElement transvection(int genus, int i, int j, int sign);
    /// p[k-1] is the image of k: a_k -> a_{p(k)}, b_k -> b_{p(k)}.
    static GLElement permutation(int genus, const std::vector<int>& p);
    /// Product of disjoint or overlapping cycles, composed right to left as usual.
    static GLElement cycles(int genus, const std::vector<std::vector<int>>& cs);

    int genus() const { return static_cast<int>(m_.rows()); }
    const IntMatrix& matrix() const { return m_; }
    const IntMatrix& inverse() const { return inv_; }

    HVector image(BasisLabel x) const;
    GLElement inverse_element() const;

    /// (g * h) acts as h first, then g.
    friend GLElement operator*(const GLElement& g, const GLElement& h);
    friend bool operator==(const GLElement& g, const GLElement& h) { return g.m_ == h.m_; }

private:
    GLElement(IntMatrix m, IntMatrix inv) : m_(std::move(m)), inv_(std::move(inv)) {}
    IntMatrix m_;
    IntMatrix inv_;
};

/// Exact inverse of a unimodular integer matrix. Throws ArgumentError otherwise.
IntMatrix unimodular_inverse(const IntMatrix& m);

HVector gl_apply(const GLElement& g, const HVector& v);
TreeSum gl_apply(const GLElement& g, const TreeSum& s);
TensorVec gl_apply(const GLElement& g, const TensorVec& v);  // diagonal action
WedgeCubic gl_apply(const GLElement& g, const WedgeCubic& w);
SymCubic gl_apply(const GLElement& g, const SymCubic& s);

/// The involution a_i <-> b_i on labels, extended linearly. It reverses ω, so
/// swap([s,t]) = -[swap(s), swap(t)].
TreeSum swap_ab(const TreeSum& s);
TensorVec swap_ab(const TensorVec& v);
WedgeCubic swap_ab(const WedgeCubic& w);

/// CLI syntax: `perm(1 2)(3 4)`, `transv(i->j,+1)`, whitespace-separated items
/// applied left to right. Throws ParseError / ConfigError.
GLElement parse_gl(std::string_view text, int genus);

}  // namespace treelie
