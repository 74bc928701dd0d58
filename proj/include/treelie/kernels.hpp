#pragma once

#include <map>
#include <string>
#include <vector>

#include "treelie/johnson.hpp"
#include "treelie/symplectic.hpp"

namespace treelie {

/// Λ³ coordinates as lattice keys: (i*64 + j)*64 + k, plus 2^18 for the A side.
SparseVector wedge_coordinates(const WedgeCubic& w);

/// Sublattice of l on which the map vanishes.
Lattice kernel_sublattice(const Lattice& l, const std::function<SparseVector(const TensorVec&)>& map);

struct SectorComparison {
    int a_count = 0;
    std::size_t kernel_rank = 0;
    std::size_t target_rank = 0;
    bool equal = false;
    std::string kernel_digest, target_digest;
};

struct KernelComparison {
    std::string name;
    std::vector<SectorComparison> sectors;
    bool equal() const;
};

/// Ker(Tr^A_Λ) ∩ Im τ_3 against Γ_3(W(ab²)) + W̄_3(a^{>=2}b), the mirror
/// statement for Tr^B_Λ, and the intersection of both kernels against
/// Γ_3(W(ab²)) + Γ_3(W(a²b)) + the middle sectors. The trace domains are the
/// sectors with at least one leaf of the traced color.
struct TraceKernelReport {
    std::vector<int> support;
    bool in_hypothesis = false;  // false when fewer than six indices
    KernelComparison a_side, b_side, both;
};

TraceKernelReport trace_kernel_lattices(const std::vector<int>& support, const SpanOptions& opt = {});
TraceKernelReport trace_kernel_lattices(const ImTau3& im, const SpanOptions& opt = {});

}  // namespace treelie
