#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "treelie/lattice.hpp"
#include "treelie/tree.hpp"

namespace treelie {

/// Trees of degree k whose number of A-leaves lies in [a_min, a_max], with
/// all indices drawn from the support.
struct ColorModuleSpec {
    int degree = 1;
    int a_min = 0;
    int a_max = 0;
    std::vector<int> support;

    /// W(a^i b^j) in degree i + j - 2.
    static ColorModuleSpec exact(int i, int j, std::vector<int> support);
    /// W_k(a^{>=r} b^{>=s}).
    static ColorModuleSpec threshold(int k, int r, int s, std::vector<int> support);

    int leaves() const { return degree + 2; }
    bool admits(int a_count) const { return a_count >= a_min && a_count <= a_max; }
    std::string name() const;
    void validate() const;  // ConfigError on bad weights or support
};

std::vector<int> support_range(int lo, int hi);
/// "1..6" or "1,2,5" to a sorted index list. Throws ParseError.
std::vector<int> parse_support(const std::string& text);
std::string support_text(const std::vector<int>& s);

/// AS-canonical caterpillar generators of the module, one per AS class,
/// ordered by canonical key, degenerate classes skipped.
std::vector<TreeTerm> enumerate_trees(const ColorModuleSpec& spec);

/// One module, a bracket [X,Y], or a triple bracket [[X,Y],Z]. The degree is
/// the sum of the operand degrees. Identical operands in [X,Y] are treated
/// as X∧X (each unordered pair once).
struct BracketRecipe {
    std::vector<ColorModuleSpec> modules;

    int degree() const;
    std::pair<int, int> color() const;  // (A-leaves, B-leaves) of the result
    std::string name() const;
};

struct SpanStats {
    std::int64_t generators = 0;  // nonzero expansions inserted
    std::int64_t pruned = 0;      // pairs without a possible contraction
    std::int64_t zero = 0;        // brackets that vanished symbolically
};

struct SpanOptions {
    int jobs = 1;
    std::int64_t deadline_ms = 0;  // 0 means no limit; checked between chunks
};

/// Lattice spanned by the expansions of the recipe's brackets. Triple
/// brackets are built in two stages: the inner lattice's generating subset
/// is bracketed with the outer module. Throws DomainError above max degree,
/// BudgetExceeded past the deadline.
Lattice span_recipe(const BracketRecipe& r, SpanStats* stats = nullptr, const SpanOptions& opt = {});
Lattice span_recipes(const std::vector<BracketRecipe>& rs, SpanStats* stats = nullptr, const SpanOptions& opt = {});
/// The nonzero brackets whose expansions span_recipe inserts, in insertion order.
std::vector<TreeSum> recipe_elements(const BracketRecipe& r, const SpanOptions& opt = {});

/// Lattice spanned by explicit generators (all of one degree).
Lattice span_trees(const std::vector<TreeSum>& gens, int degree);

/// Generators of a two-fold bracket module: the generating subset of its
/// lattice, as tree sums.
std::vector<TreeSum> bracket_generators(const ColorModuleSpec& x, const ColorModuleSpec& y, SpanStats* stats = nullptr,
                                        const SpanOptions& opt = {});

/// Recipes spanning the sector of Im τ_3 with i A-leaves (i = 0..5) in degree 3.
std::vector<BracketRecipe> sector_recipes(int i, const std::vector<int>& support);

/// Γ_3 of a module sum: all triple brackets [[X,Y],Z] with X,Y,Z among the
/// given degree-1 modules, restricted to the sector with a_count A-leaves.
std::vector<BracketRecipe> gamma3_recipes(const std::vector<ColorModuleSpec>& mods, int a_count);

struct ImTau3 {
    std::vector<int> support;
    std::map<int, Lattice> sectors;  // A-leaf count -> sector lattice
};

/// The six sector lattices of Im τ_3 over the support.
ImTau3 im_tau3(const std::vector<int>& support, const SpanOptions& opt = {});

/// The a<->b mirror of a lattice (degree-3 arity 5 coordinates).
Lattice swap_lattice(const Lattice& l);

/// Orbit of t(b1,b2,b4,a4,b3) under injective relabelings into the support.
std::vector<TreeSum> k_family(const std::vector<int>& support);

}  // namespace treelie
