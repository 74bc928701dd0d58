#include <gtest/gtest.h>

#include <set>

#include "treelie/errors.hpp"
#include "treelie/gl_action.hpp"
#include "treelie/johnson.hpp"
#include "treelie/parser.hpp"

using namespace treelie;

namespace {

std::uint64_t choose(int n, int k) {
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

Lattice mirror_recipe(const BracketRecipe& r) {
    BracketRecipe m = r;
    for (auto& x : m.modules) {
        const int leaves = x.leaves();
        std::swap(x.a_min, x.a_max);
        x.a_min = leaves - x.a_min;
        x.a_max = leaves - x.a_max;
    }
    return span_recipe(m);
}

}  // namespace

TEST(Enumerate, TripodCounts) {
    const auto s6 = support_range(1, 6);
    // two distinct A indices and any B index
    EXPECT_EQ(enumerate_trees(ColorModuleSpec::exact(2, 1, s6)).size(), choose(6, 2) * 6);
    EXPECT_EQ(enumerate_trees(ColorModuleSpec::exact(3, 0, s6)).size(), choose(6, 3));
    auto one = enumerate_trees(ColorModuleSpec::exact(3, 0, {1, 2, 3}));
    ASSERT_EQ(one.size(), 1u);
    EXPECT_TRUE(eq_rational(TreeSum(one[0]), parse_expression("t(a1,a2,a3)")) ||
                eq_rational(TreeSum(one[0]), parse_expression("-t(a1,a2,a3)")));
}

TEST(Enumerate, DegreeTwoCounts) {
    // unordered pairs of unordered pairs of distinct indices, repetition allowed
    const std::uint64_t pairs = choose(6, 2);
    EXPECT_EQ(enumerate_trees(ColorModuleSpec::exact(4, 0, support_range(1, 6))).size(), pairs * (pairs + 1) / 2);
}

TEST(Enumerate, NoDegenerateOrDuplicateClasses) {
    auto ts = enumerate_trees(ColorModuleSpec::exact(3, 1, {1, 2, 3}));
    std::set<std::string> keys;
    for (const auto& t : ts) {
        TreeSum s(t);
        ASSERT_EQ(s.size(), 1u);
        EXPECT_TRUE(keys.insert(s.terms().begin()->first).second);
        EXPECT_EQ(key_color_weight(s.terms().begin()->first), std::make_pair(3, 1));
    }
}

TEST(Support, ParseAndPrint) {
    EXPECT_EQ(parse_support("1..6"), support_range(1, 6));
    EXPECT_EQ(parse_support("5,1,2"), (std::vector<int>{1, 2, 5}));
    EXPECT_EQ(support_text({1, 2, 3}), "1..3");
    EXPECT_THROW(parse_support("3..1"), ParseError);
    EXPECT_THROW(parse_support("x"), ParseError);
}

TEST(Recipe, MirrorSymmetry) {
    const auto s = support_range(1, 4);
    for (const char* text : {"[a3,a2b]", "[a2b,ab2]", "[[a3,a2b],ab2]"}) {
        BracketRecipe r = parse_recipe(text, s);
        EXPECT_TRUE(lattice_equal(swap_lattice(span_recipe(r)), mirror_recipe(r))) << text;
    }
}

TEST(Recipe, PermutationInvariance) {
    const auto s = support_range(1, 4);
    for (const char* text : {"[a2b,ab2]", "[[a2b,a2b],b3]"}) {
        BracketRecipe r = parse_recipe(text, s);
        Lattice l = span_recipe(r);
        for (const auto& p : std::vector<std::vector<int>>{{2, 1, 3, 4}, {2, 3, 4, 1}}) {
            GLElement g = GLElement::permutation(4, p);
            Lattice moved(l.arity());
            for (const auto& row : l.basis()) moved.insert(gl_apply(g, to_tensor(row, l.arity())));
            EXPECT_TRUE(lattice_equal(moved, l)) << text;
        }
    }
}

TEST(Recipe, JacobiClosure) {
    // [[X,Y],Z] lies in [[Y,Z],X] + [[Z,X],Y]
    const auto s = support_range(1, 4);
    Lattice lhs = span_recipe(parse_recipe("[[a3,a2b],ab2]", s));
    Lattice rhs = span_recipes({parse_recipe("[[a2b,ab2],a3]", s), parse_recipe("[[ab2,a3],a2b]", s)});
    EXPECT_TRUE(rhs.contains(lhs));
}

TEST(Recipe, ElementsSpanTheLattice) {
    const auto s = support_range(1, 4);
    BracketRecipe r = parse_recipe("[a3,ab2]", s);
    Lattice l(r.degree() + 2);
    for (const auto& e : recipe_elements(r)) {
        EXPECT_EQ(key_color_weight(e.terms().begin()->first), r.color());
        l.insert(expand(e));
    }
    EXPECT_TRUE(lattice_equal(l, span_recipe(r)));
}

TEST(Recipe, DegreeAboveMaximum) {
    BracketRecipe r{{ColorModuleSpec::exact(4, 1, {1, 2}), ColorModuleSpec::exact(4, 1, {1, 2})}};
    EXPECT_THROW(span_recipe(r), DomainError);
}

TEST(Recipe, DeadlineStops) {
    SpanOptions opt;
    opt.deadline_ms = 1;
    EXPECT_THROW(span_recipe(parse_recipe("[[a2b,ab2],a2b]", support_range(1, 6)), nullptr, opt), BudgetExceeded);
}

TEST(KFamily, OrbitSize) { EXPECT_EQ(k_family(support_range(1, 5)).size(), 5u * 4 * 3 * 2); }

TEST(Recipe, OperandOrderKeptInCache) {
    const auto s = support_range(1, 3);
    auto x = ColorModuleSpec::exact(2, 1, s), y = ColorModuleSpec::exact(1, 2, s);
    std::set<std::string> direct;
    for (const auto& t : enumerate_trees(x))
        for (const auto& u : enumerate_trees(y)) direct.insert(to_string(bracket(TreeSum(t), TreeSum(u))));
    bracket_generators(y, x);
    for (const auto& e : bracket_generators(x, y)) EXPECT_TRUE(direct.count(to_string(e))) << to_string(e);
}
