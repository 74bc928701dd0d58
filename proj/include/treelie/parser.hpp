#pragma once

#include <string_view>

#include "treelie/johnson.hpp"
#include "treelie/symplectic.hpp"
#include "treelie/tree.hpp"

namespace treelie {

/// Tree expressions:
///   expr := ['+'|'-'] item (('+'|'-') item)*
///   item := [int ['*']] atom | '0'
///   atom := 't(' label (',' label)+ ')' | 'r(' label ',' node ')'
///         | '[' expr ',' expr ']' | '(' expr ')'
///   node := label | '(' node ',' node ')'
/// r(...) is the rooted form printed for non-caterpillar shapes. Whitespace
/// is ignored. Throws ParseError with the offending position, DomainError
/// above max_degree.
TreeSum parse_expression(std::string_view text, int max_degree = kDefaultMaxDegree);

/// Sums of wedges: "-a4^a3^a2 + 2 a1^a2^a3". All labels on one side.
WedgeCubic parse_wedge(std::string_view text);

/// Module or bracket recipe text: "a2b", "W(a^2b)", "[a3,a2b]",
/// "[[a3,a2b],ab2]". Exact color modules of degree 1.
BracketRecipe parse_recipe(std::string_view text, const std::vector<int>& support);

}  // namespace treelie
