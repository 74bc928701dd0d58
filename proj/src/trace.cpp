#include "treelie/trace.hpp"

#include <algorithm>

#include "treelie/errors.hpp"
#include "treelie/gl_action.hpp"

namespace treelie {

namespace {

using Reading = std::array<BasisLabel, 5>;

void check_degree3(const TreeSum& s) {
    if (!s.is_zero() && s.degree() != 3)
        throw DomainError("trace maps are defined on degree 3, got degree " + std::to_string(s.degree()));
}

void normalize_term(const TreeTerm& t, const Integer& c, std::vector<std::pair<Reading, Integer>>& out) {
    auto readings = caterpillar_readings(t);
    const std::pair<std::vector<BasisLabel>, int>* best = nullptr;
    for (const auto& r : readings)
        if (r.first[1].side == Side::A && (!best || r.first < best->first)) best = &r;
    if (best) {
        Reading x;
        std::copy(best->first.begin(), best->first.end(), x.begin());
        out.emplace_back(x, best->second < 0 ? Integer(-c) : c);
        return;
    }
    // the A-leaf hangs off the middle vertex: split along an edge there
    int u = -1;
    for (int id : t.leaf_ids())
        if (t.nodes[id].label.side == Side::A) u = t.nodes[id].nbr[0];
    for (auto [p, q] : internal_edges(t)) {
        if (p != u && q != u) continue;
        auto [first, second] = ihx_move(t, u, p == u ? q : p);
        normalize_term(first, c, out);
        normalize_term(second, c, out);
        return;
    }
    throw DomainError("cannot normalize tree for the trace");
}

BasisLabel bar(BasisLabel x) { return {Side::B, x.index}; }

}  // namespace

std::vector<std::pair<std::array<BasisLabel, 5>, Integer>> normalize_slot2(const TreeSum& s) {
    check_degree3(s);
    std::vector<std::pair<Reading, Integer>> out;
    for (const auto& [key, c] : s.terms()) {
        auto labels = key_labels(key);
        auto na = std::count_if(labels.begin(), labels.end(), [](BasisLabel x) { return x.side == Side::A; });
        if (na != 1) continue;
        normalize_term(decode_key(key), c, out);
    }
    return out;
}

SymCubic tr_A3(const TreeSum& s) {
    SymCubic r;
    for (const auto& [x, c] : normalize_slot2(s)) {
        auto [xc, xa, xd, xe, xf] = x;
        Integer k = c * kTraceSign;
        if (int w = omega(xa, xe)) r.add({xc.index, xd.index, xf.index}, k * w);
        if (int w = omega(xa, xf)) r.add({xc.index, xd.index, xe.index}, -k * w);
    }
    return r;
}

WedgeCubic tr_A_lambda(const TreeSum& s) {
    WedgeCubic r(Side::B);
    for (const auto& [x, c] : normalize_slot2(s)) {
        auto [xc, xa, xd, xe, xf] = x;
        Integer k = c * kTraceSign;
        if (int w = omega(xa, xd)) r.add({bar(xc).index, bar(xe).index, bar(xf).index}, 2 * k * w);
        if (int w = omega(xa, xe)) r.add({xc.index, xd.index, xf.index}, k * w);
        if (int w = omega(xa, xf)) r.add({xc.index, xd.index, xe.index}, -k * w);
    }
    return r;
}

WedgeCubic tr_B_lambda(const TreeSum& s) { return swap_ab(tr_A_lambda(swap_ab(s))); }

WedgeCubic trace_composite(const TensorVec& v) {
    if (!v.is_zero() && v.arity() != 5) throw DomainError("trace expects arity 5 tensors");
    WedgeCubic r(Side::B);
    for (const auto& [key, c] : v.terms()) {
        auto x = unpack(key, 5);
        if (x[0].side != Side::A) continue;
        if (std::any_of(x.begin() + 1, x.end(), [](BasisLabel y) { return y.side == Side::A; })) continue;
        if (int w = omega(x[0], x[1])) r.add({x[2].index, x[3].index, x[4].index}, c * w);
    }
    return r;
}

SymCubic trace_composite_sym(const TensorVec& v) {
    if (!v.is_zero() && v.arity() != 5) throw DomainError("trace expects arity 5 tensors");
    SymCubic r;
    for (const auto& [key, c] : v.terms()) {
        auto x = unpack(key, 5);
        if (x[0].side != Side::A) continue;
        if (std::any_of(x.begin() + 1, x.end(), [](BasisLabel y) { return y.side == Side::A; })) continue;
        if (int w = omega(x[0], x[1])) r.add({x[2].index, x[3].index, x[4].index}, c * w);
    }
    return r;
}

WedgeCubic tr_A_lambda_tensor(const TensorVec& v) { return Integer(kCompositeSign) * trace_composite(v); }

WedgeCubic tr_B_lambda_tensor(const TensorVec& v) { return swap_ab(tr_A_lambda_tensor(swap_ab(v))); }

Integer trace_pairing(const TreeSum& s, const WedgeCubic& w) {
    if (w.side() != Side::A) throw ArgumentError("the functional pairs with an element of Λ³A");
    return pairing(tr_A_lambda(s), w);
}

}  // namespace treelie
