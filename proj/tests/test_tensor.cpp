#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "treelie/errors.hpp"
#include "treelie/tensor.hpp"

using namespace treelie;
using oracle::br;
using oracle::head;

TEST(Expand, TripodByHand) {
    auto x = a(1), y = b(2), z = a(3);
    // rooted at x the vertex reads (x; y, z) -> [z, y], and so on cyclically
    TensorVec want = head(x, br(z, y)) + head(y, br(x, z)) + head(z, br(y, x));
    EXPECT_EQ(expand(cat({x, y, z})), want);
    // i.e. minus the alternating tensor a⊗[b,c] + b⊗[c,a] + c⊗[a,b]
    TensorVec alt = head(x, br(y, z)) + head(y, br(z, x)) + head(z, br(x, y));
    EXPECT_EQ(expand(cat({x, y, z})), Integer(-1) * alt);
    EXPECT_EQ(expand(cat({x, y, z})).size(), 6u);
}

TEST(Expand, DegreeTwoByHand) {
    auto x1 = a(1), x2 = b(2), x3 = a(3), x4 = b(4);
    TensorVec want = head(x1, br(br(x4, x3), x2)) + head(x2, br(x1, br(x4, x3))) +
                     head(x3, br(br(x2, x1), x4)) + head(x4, br(x3, br(x2, x1)));
    EXPECT_EQ(expand(cat({x1, x2, x3, x4})), want);
}

TEST(Expand, DegreeThreeRootedAtEnd) {
    auto x = std::vector<BasisLabel>{a(1), b(2), a(3), b(4), a(5)};
    TensorVec v = expand(cat(x));
    // the x5 component is x5 ⊗ [x4,[x3,[x2,x1]]]
    TensorVec want = head(x[4], br(x[3], br(x[2], br(x[1], x[0]))));
    for (const auto& [k, c] : want.terms()) EXPECT_EQ(v.coeff(k), c);
    EXPECT_EQ(v.size(), 5u * 8u);
}

TEST(Expand, ZeroAndLinear) {
    EXPECT_TRUE(expand(TreeSum()).is_zero());
    TreeSum s = cat({a(1), a(2), b(3)}, 2) + cat({b(1), b(2), a(3)}, -3);
    EXPECT_EQ(expand(s), Integer(2) * expand(cat({a(1), a(2), b(3)})) -
                             Integer(3) * expand(cat({b(1), b(2), a(3)})));
}

TEST(EqRational, IHXAndMismatch) {
    auto A = a(1), B = b(2), C = a(3), D = b(4);
    EXPECT_TRUE(eq_rational(cat({A, B, C, D}), cat({A, C, B, D}) + cat({C, B, A, D})));
    EXPECT_TRUE(eq_rational(cat({a(1), a(2), b(1), b(2)}), cat({a(1), a(2), b(1), b(2)})));
    EXPECT_FALSE(eq_rational(cat({A, B, C, D}), cat({A, C, B, D})));
    EXPECT_THROW(eq_rational(cat({A, B, C}), cat({A, B, C, D})), DomainError);
}

TEST(EqRational, RandomIHXShuffle) {
    std::mt19937_64 rng(2024);
    for (int it = 0; it < 500; ++it) {
        std::vector<BasisLabel> xs;
        int n = 4 + static_cast<int>(rng() % 3);
        for (int i = 0; i < n; ++i) xs.push_back(rng() % 2 ? a(1 + rng() % 6) : b(1 + rng() % 6));
        TreeSum orig = cat(xs);
        // rewrite a few random terms by random IHX moves; keep the sum as graphs
        std::vector<std::pair<TreeTerm, int>> terms{{parse_caterpillar(xs, 6), 1}};
        int moves = 1 + static_cast<int>(rng() % 4);
        for (int m = 0; m < moves; ++m) {
            std::size_t pick = rng() % terms.size();
            auto [t, c] = terms[pick];
            auto edges = internal_edges(t);
            if (edges.empty()) continue;
            auto [u, v] = edges[rng() % edges.size()];
            auto [p, q] = ihx_move(t, u, v);
            terms[pick] = {p, c};
            terms.emplace_back(q, c);
        }
        TreeSum rewritten;
        for (const auto& [t, c] : terms) rewritten.add(t, c);
        EXPECT_TRUE(eq_rational(orig, rewritten));
    }
}

TEST(Color, WeightAndProjection) {
    EXPECT_EQ(color_weight(parse_caterpillar({a(1), a(2), b(2), b(1)})), std::make_pair(2, 2));
    EXPECT_EQ(color_weight(parse_caterpillar({b(1), b(2), b(4), a(4), b(3)})), std::make_pair(1, 4));
    EXPECT_EQ(color_weight(parse_caterpillar({a(1), a(2), a(3)})), std::make_pair(3, 0));
    TreeSum s = cat({b(2), b(1), a(1), b(3), b(4)}) + cat({a(1), a(2), a(3), a(4), a(5)}) +
                cat({a(1), a(2), b(3), b(4), a(5)}, 2);
    EXPECT_EQ(project_color(s, 1, 4), cat({b(2), b(1), a(1), b(3), b(4)}));
    EXPECT_TRUE(project_color(cat({a(1), a(2), a(3), a(4), a(5)}), 1, 4).is_zero());
    TreeSum sum;
    for (int i = 0; i <= 5; ++i) sum += project_color(s, i, 5 - i);
    EXPECT_EQ(sum, s);
    EXPECT_THROW(project_color(s, 1, 3), DomainError);
}

TEST(Contract, FirstTwoSlots) {
    TensorVec v(5);
    v.add({a(1), b(1), b(2), b(3), b(4)}, 1);
    TensorVec w(3);
    w.add({b(2), b(3), b(4)}, 1);
    EXPECT_EQ(contract_12(v), w);
    TensorVec z(5);
    z.add({a(1), b(2), b(2), b(3), b(4)}, 1);
    EXPECT_TRUE(contract_12(z).is_zero());
    EXPECT_THROW(contract_12(TensorVec(1)), ArgumentError);
}

TEST(Contract, LinearAgainstTermwise) {
    std::mt19937_64 rng(9);
    TensorVec v(4);
    std::vector<std::pair<std::vector<BasisLabel>, int>> raw;
    for (int i = 0; i < 50; ++i) {
        std::vector<BasisLabel> t;
        for (int j = 0; j < 4; ++j) t.push_back(rng() % 2 ? a(1 + rng() % 3) : b(1 + rng() % 3));
        int c = static_cast<int>(rng() % 7) - 3;
        raw.emplace_back(t, c);
        v.add(t, c);
    }
    TensorVec want(2);
    for (const auto& [t, c] : raw) want.add({t[2], t[3]}, c * omega(t[0], t[1]));
    EXPECT_EQ(contract_12(v), want);
}

TEST(Serialization, SortedLines) {
    TensorVec v(2);
    v.add({b(1), a(2)}, -2);
    v.add({a(1), b(1)}, 1);
    EXPECT_EQ(to_string(v), "1\ta1,b1\n-2\tb1,a2\n");
}

TEST(TensorProduct, Arity) {
    TensorVec u(1), w(2);
    u.add({a(1)}, 2);
    w.add({b(1), b(2)}, 3);
    TensorVec p = tensor_product(u, w);
    EXPECT_EQ(p.arity(), 3);
    EXPECT_EQ(p.coeff(pack({a(1), b(1), b(2)})), 6);
}

// Lab∘η = (k+2)·id, both symbolically through the rooted trees and through
// the tensor words with the left-normed bracket.
TEST(LabEta, RandomTrees) {
    std::mt19937_64 rng(77);
    for (int k = 1; k <= 3; ++k) {
        for (int it = 0; it < 30; ++it) {
            std::vector<BasisLabel> xs;
            for (int i = 0; i < k + 2; ++i) xs.push_back(rng() % 2 ? a(1 + rng() % 4) : b(1 + rng() % 4));
            TreeSum t = cat(xs);
            if (t.is_zero()) continue;
            TreeSum viaRoots;
            for (const auto& [l, r] : rooted_expansion(decode_key(t.terms().begin()->first)))
                viaRoots += lab(HVector(l), r);
            EXPECT_EQ(viaRoots, Integer(k + 2) * TreeSum(decode_key(t.terms().begin()->first)));
            TreeSum back = dynkin_lab(expand(t));
            EXPECT_EQ(expand(back), Integer((k + 1) * (k + 2)) * expand(t));
        }
    }
}
