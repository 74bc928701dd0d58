#include <gtest/gtest.h>

#include <random>

#include "treelie/errors.hpp"
#include "treelie/gl_action.hpp"
#include "treelie/johnson.hpp"
#include "treelie/parser.hpp"
#include "treelie/trace.hpp"

using namespace treelie;

namespace {

const char* kT1 = "[[t(b2,b1,b5),t(a5,a1,b6)],t(a6,b3,b4)]";

// Random degree-3 trees with exactly one A-leaf, built as brackets so that
// non-caterpillar readings of the A-leaf occur.
TreeSum random_sector14(std::mt19937_64& rng) {
    while (true) {
        std::vector<BasisLabel> xs;
        int where = static_cast<int>(rng() % 5);
        for (int i = 0; i < 5; ++i) {
            int idx = 1 + static_cast<int>(rng() % 6);
            xs.push_back(i == where ? a(idx) : b(idx));
        }
        TreeSum t = cat(xs);
        if (!t.is_zero()) return t;
    }
}

}  // namespace

TEST(Trace, FormulaAgainstComposite) {
    std::mt19937_64 rng(17);
    for (int it = 0; it < 400; ++it) {
        TreeSum t = random_sector14(rng);
        EXPECT_EQ(tr_A_lambda(t), tr_A_lambda_tensor(expand(t))) << to_string(t);
    }
}

TEST(Trace, BSideByConjugation) {
    std::mt19937_64 rng(19);
    for (int it = 0; it < 100; ++it) {
        TreeSum t = swap_ab(random_sector14(rng));
        EXPECT_EQ(tr_B_lambda(t), tr_B_lambda_tensor(expand(t)));
        EXPECT_EQ(tr_B_lambda(t).side(), Side::A);
    }
}

TEST(Trace, T1) {
    TreeSum t1 = parse_expression(kT1);
    WedgeCubic v = tr_A_lambda(t1);
    EXPECT_EQ(v, Integer(4) * WedgeCubic::wedge(b(2), b(3), b(4)));
    EXPECT_EQ(trace_pairing(t1, parse_wedge("-a4^a3^a2")), Integer(-4));
    EXPECT_TRUE(tr_A3(t1).is_zero());
}

TEST(Trace, GeneratorOfQ) {
    TreeSum q = parse_expression("t(b1,b2,b4,a4,b3)");
    EXPECT_EQ(tr_A_lambda(q), Integer(2) * WedgeCubic::wedge(b(1), b(2), b(3)));
    EXPECT_EQ(trace_pairing(q, parse_wedge("a1^a2^a3")), Integer(-2));
}

TEST(Trace, KImageIsTwiceLambda3B) {
    const auto s = support_range(1, 5);
    for (const auto& k : k_family(s)) {
        WedgeCubic w = tr_A_lambda(k);
        ASSERT_EQ(w.terms().size(), 1u);
        EXPECT_EQ(abs(w.terms().begin()->second), Integer(2));
        EXPECT_TRUE(tr_A3(k).is_zero());
    }
}

TEST(Trace, VanishesOnGammaAB2) {
    const auto s = support_range(1, 5);
    auto r = parse_recipe("[[ab2,ab2],ab2]", s);
    int n = 0;
    for (const auto& e : recipe_elements(r)) {
        EXPECT_TRUE(tr_A_lambda(e).is_zero()) << to_string(e);
        ++n;
    }
    EXPECT_GT(n, 0);
}

TEST(Trace, Equivariant) {
    std::mt19937_64 rng(23);
    GLElement p = GLElement::cycles(6, {{1, 2, 3}, {4, 5}});
    for (int it = 0; it < 50; ++it) {
        TreeSum t = random_sector14(rng);
        EXPECT_EQ(tr_A_lambda(gl_apply(p, t)), gl_apply(p, tr_A_lambda(t)));
    }
}

TEST(Trace, OtherSectorsIgnored) {
    // only the single-A-leaf component contributes
    EXPECT_TRUE(tr_A_lambda(parse_expression("t(a1,a2,b1,b3,b4)")).is_zero());
    TreeSum mixed = parse_expression("t(b1,b2,b4,a4,b3) + t(a1,a2,b1,b3,b4)");
    EXPECT_EQ(tr_A_lambda(mixed), tr_A_lambda(parse_expression("t(b1,b2,b4,a4,b3)")));
    EXPECT_TRUE(tr_A_lambda(parse_expression("t(b1,b2,b3,b4,b5)")).is_zero());
    EXPECT_TRUE(tr_A_lambda(TreeSum()).is_zero());
}

TEST(Trace, Errors) {
    EXPECT_THROW(tr_A_lambda(parse_expression("t(a1,b2,b3,b4)")), DomainError);
    EXPECT_THROW(tr_A3(parse_expression("t(a1,b2,b3)")), DomainError);
    EXPECT_THROW(trace_pairing(parse_expression(kT1), parse_wedge("b1^b2^b3")), ArgumentError);
}
