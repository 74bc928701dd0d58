#pragma once

#include <array>
#include <utility>
#include <vector>

#include "treelie/symplectic.hpp"
#include "treelie/tensor.hpp"
#include "treelie/tree.hpp"

namespace treelie {

/// Global sign applied to the trace formulas below. +1 makes the pairing
/// of T1 with -a4∧a3∧a2 come out as -4.
inline constexpr int kTraceSign = 1;

/// The tensor-level composite (root at the A-leaf, contract slots 1 and 2,
/// project to Λ³B) equals this sign times the formula.
inline constexpr int kCompositeSign = -1;

/// Terms of the (1,4) sector rewritten as Σ c · t(c,a,d,e,f) with the single
/// A-leaf in slot 2, using AS and the IHX move at the A-leaf's vertex.
std::vector<std::pair<std::array<BasisLabel, 5>, Integer>> normalize_slot2(const TreeSum& s);

/// Symmetric Lagrangian trace W_3(a^{>=1}b) -> S³B, on normalized terms
/// ω(a,e) c̄d̄f̄ - ω(a,f) c̄d̄ē. Throws DomainError unless degree 3.
SymCubic tr_A3(const TreeSum& s);

/// Antisymmetric trace to Λ³B:
/// 2ω(a,d) c̄∧ē∧f̄ + ω(a,e) c̄∧d̄∧f̄ - ω(a,f) c̄∧d̄∧ē on normalized terms.
WedgeCubic tr_A_lambda(const TreeSum& s);

/// swap ∘ Tr^A_Λ ∘ swap, landing in Λ³A.
WedgeCubic tr_B_lambda(const TreeSum& s);

/// Composite route on a degree-3 expansion vector (arity 5), before the
/// kCompositeSign correction.
WedgeCubic trace_composite(const TensorVec& v);
SymCubic trace_composite_sym(const TensorVec& v);

/// Tr^A_Λ and Tr^B_Λ evaluated through the expansion; agree with the
/// tree-level maps on η-images.
WedgeCubic tr_A_lambda_tensor(const TensorVec& v);
WedgeCubic tr_B_lambda_tensor(const TensorVec& v);

/// <Tr^A_Λ(s), w> for w in Λ³A. Throws ArgumentError if w is on the B side.
Integer trace_pairing(const TreeSum& s, const WedgeCubic& w);

}  // namespace treelie
