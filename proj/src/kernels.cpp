#include "treelie/kernels.hpp"

#include <algorithm>

#include "treelie/trace.hpp"

namespace treelie {

SparseVector wedge_coordinates(const WedgeCubic& w) {
    const std::uint64_t off = w.side() == Side::A ? (1ULL << 18) : 0;
    SparseVector out;
    for (const auto& [t, c] : w.terms())
        out.emplace_back(off + (static_cast<std::uint64_t>(t[0]) * 64 + t[1]) * 64 + t[2], c);
    return out;
}

Lattice kernel_sublattice(const Lattice& l, const std::function<SparseVector(const TensorVec&)>& map) {
    auto rows = l.basis();
    std::vector<SparseVector> images;
    images.reserve(rows.size());
    for (const auto& r : rows) images.push_back(map(to_tensor(r, l.arity())));
    Lattice k(l.arity());
    std::int64_t id = 0;
    for (const auto& coords : integer_kernel(images)) k.insert(combine(rows, coords), id++);
    return k;
}

bool KernelComparison::equal() const {
    return std::all_of(sectors.begin(), sectors.end(), [](const SectorComparison& s) { return s.equal; });
}

namespace {

SectorComparison compare(int i, const Lattice& kernel, const Lattice& target) {
    SectorComparison s;
    s.a_count = i;
    s.kernel_rank = kernel.rank();
    s.target_rank = target.rank();
    s.equal = lattice_equal(kernel, target);
    s.kernel_digest = kernel.digest();
    s.target_digest = target.digest();
    return s;
}

SparseVector trace_a(const TensorVec& v) { return wedge_coordinates(tr_A_lambda_tensor(v)); }
SparseVector trace_b(const TensorVec& v) { return wedge_coordinates(tr_B_lambda_tensor(v)); }
SparseVector trace_ab(const TensorVec& v) {
    SparseVector x = trace_a(v), y = trace_b(v);
    x.insert(x.end(), y.begin(), y.end());
    return x;
}

}  // namespace

TraceKernelReport trace_kernel_lattices(const std::vector<int>& support, const SpanOptions& opt) {
    return trace_kernel_lattices(im_tau3(support, opt), opt);
}

TraceKernelReport trace_kernel_lattices(const ImTau3& im, const SpanOptions& opt) {
    const auto& s = im.support;
    TraceKernelReport rep;
    rep.support = s;
    rep.in_hypothesis = s.size() >= 6;
    auto W = [&](int x, int y) { return ColorModuleSpec::exact(x, y, s); };
    const auto a2b = W(2, 1), ab2 = W(1, 2);
    const Lattice gamma_ab2 = span_recipe(BracketRecipe{{ab2, ab2, ab2}}, nullptr, opt);
    const Lattice gamma_a2b = span_recipe(BracketRecipe{{a2b, a2b, a2b}}, nullptr, opt);

    rep.a_side.name = "Ker(TrA) = Gamma3(W(ab^2)) + W3(a>=2b)";
    for (int i = 1; i <= 5; ++i) {
        const Lattice& sec = im.sectors.at(i);
        rep.a_side.sectors.push_back(compare(i, kernel_sublattice(sec, trace_a), i == 1 ? gamma_ab2 : sec));
    }
    rep.b_side.name = "Ker(TrB) = Gamma3(W(a^2b)) + W3(ab>=2)";
    for (int i = 0; i <= 4; ++i) {
        const Lattice& sec = im.sectors.at(i);
        rep.b_side.sectors.push_back(compare(i, kernel_sublattice(sec, trace_b), i == 4 ? gamma_a2b : sec));
    }
    rep.both.name = "Ker(TrA) ∩ Ker(TrB) = Gamma3(W(a^2b)) + Gamma3(W(ab^2)) + W3(a>=2b>=2)";
    for (int i = 1; i <= 4; ++i) {
        const Lattice& sec = im.sectors.at(i);
        const Lattice& target = i == 1 ? gamma_ab2 : i == 4 ? gamma_a2b : sec;
        rep.both.sectors.push_back(compare(i, kernel_sublattice(sec, trace_ab), target));
    }
    return rep;
}

}  // namespace treelie
