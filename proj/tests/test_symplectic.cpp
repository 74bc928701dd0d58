#include <gtest/gtest.h>

#include "treelie/errors.hpp"
#include "treelie/symplectic.hpp"

using namespace treelie;

TEST(Omega, BasicValues) {
    EXPECT_EQ(omega(a(1), b(1)), 1);
    EXPECT_EQ(omega(a(1), a(2)), 0);
    EXPECT_EQ(omega(b(3), a(3)), -1);
    EXPECT_EQ(omega(a(2), b(3)), 0);
}

TEST(Omega, AntisymmetricAndLagrangian) {
    for (int i = 1; i <= 6; ++i)
        for (int j = 1; j <= 6; ++j)
            for (auto x : {a(i), b(i)})
                for (auto y : {a(j), b(j)}) {
                    EXPECT_EQ(omega(x, y), -omega(y, x));
                    if (x.side == y.side) EXPECT_EQ(omega(x, y), 0);
                }
}

TEST(Omega, GenusChecked) {
    EXPECT_EQ(omega(a(2), b(2), 3), 1);
    EXPECT_THROW(omega(a(4), b(4), 3), ConfigError);
}

TEST(Labels, ParseAndPrint) {
    EXPECT_EQ(parse_label("a1"), a(1));
    EXPECT_EQ(parse_label("b12"), b(12));
    EXPECT_EQ(to_string(b(7)), "b7");
    EXPECT_THROW(parse_label("c1"), ParseError);
    EXPECT_THROW(parse_label("a"), ParseError);
    EXPECT_THROW(parse_label("a0"), ParseError);
    EXPECT_LT(a(63), b(1));
}

TEST(HVector, ProjectToB) {
    HVector v = HVector(a(1)) + Integer(2) * HVector(b(2));
    EXPECT_EQ(project_to_B(v), Integer(2) * HVector(b(2)));
    EXPECT_TRUE(project_to_B(HVector(a(5))).is_zero());
    EXPECT_EQ(project_to_B(HVector(b(4))), HVector(b(4)));
}

TEST(HVector, OmegaBilinear) {
    HVector x = HVector(a(1)) + Integer(3) * HVector(b(2));
    HVector y = Integer(2) * HVector(b(1)) - HVector(a(2));
    // 1*2*ω(a1,b1) + 3*(-1)*ω(b2,a2) = 2 + 3
    EXPECT_EQ(omega(x, y), 5);
    EXPECT_EQ(omega(y, x), -5);
}

TEST(Wedge, SortingSign) {
    auto w = WedgeCubic::wedge(b(3), b(1), b(2));
    EXPECT_EQ(w.coeff({1, 2, 3}), 1);
    auto v = WedgeCubic::wedge(b(2), b(1), b(3));
    EXPECT_EQ(v.coeff({1, 2, 3}), -1);
    EXPECT_TRUE(WedgeCubic::wedge(a(1), a(1), a(2)).is_zero());
    EXPECT_THROW(WedgeCubic::wedge(a(1), b(1), a(2)), ArgumentError);
}

// independent oracle: Leibniz expansion of det(ω(x_i, y_j))
static int det_oracle(std::array<BasisLabel, 3> x, std::array<BasisLabel, 3> y) {
    static const int perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {2, 1, 0}, {1, 0, 2}};
    int total = 0;
    for (int p = 0; p < 6; ++p) {
        int s = p < 3 ? 1 : -1;
        for (int i = 0; i < 3; ++i) s *= omega(x[i], y[perms[p][i]]);
        total += s;
    }
    return total;
}

TEST(Pairing, KnownValues) {
    EXPECT_EQ(pairing(WedgeCubic::wedge(b(2), b(3), b(4)), WedgeCubic::wedge(a(4), a(3), a(2))), 1);
    EXPECT_EQ(pairing(WedgeCubic::wedge(b(1), b(2), b(3)), WedgeCubic::wedge(a(4), a(5), a(6))), 0);
    EXPECT_EQ(pairing(WedgeCubic::wedge(b(1), b(2), b(3)), WedgeCubic::wedge(a(1), a(2), a(3))), -1);
}

TEST(Pairing, MatchesDeterminantOracle) {
    int idx[4] = {1, 2, 3, 4};
    for (int i : idx)
        for (int j : idx)
            for (int k : idx)
                for (int p : idx)
                    for (int q : idx)
                        for (int r : idx) {
                            auto u = WedgeCubic::wedge(b(i), b(j), b(k));
                            auto v = WedgeCubic::wedge(a(p), a(q), a(r));
                            int expect = det_oracle({b(i), b(j), b(k)}, {a(p), a(q), a(r)});
                            EXPECT_EQ(pairing(u, v), expect);
                        }
}

TEST(Pairing, SideMismatch) {
    auto u = WedgeCubic::wedge(a(1), a(2), a(3));
    EXPECT_THROW(pairing(u, u), ArgumentError);
}

TEST(SymCubic, Order) {
    SymCubic s;
    s.add({3, 1, 1}, 2);
    EXPECT_EQ(s.coeff({1, 3, 1}), 2);
    EXPECT_EQ(to_string(s), "2*b1.b1.b3");
}
