#include "treelie/symplectic.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "treelie/errors.hpp"

namespace treelie {

std::string to_string(BasisLabel x) {
    return (x.side == Side::A ? "a" : "b") + std::to_string(x.index);
}

BasisLabel parse_label(std::string_view text) {
    if (text.size() < 2 || (text[0] != 'a' && text[0] != 'b'))
        throw ParseError("expected label like a1 or b2", 0);
    int idx = 0;
    auto [p, ec] = std::from_chars(text.data() + 1, text.data() + text.size(), idx);
    if (ec != std::errc() || p != text.data() + text.size())
        throw ParseError("bad label index in '" + std::string(text) + "'", 1);
    if (idx < 1 || idx > kMaxIndex) throw ParseError("label index out of range", 1);
    return {text[0] == 'a' ? Side::A : Side::B, idx};
}

void check_label(BasisLabel x, int genus) {
    if (x.index < 1 || x.index > genus)
        throw ConfigError("label " + to_string(x) + " outside genus " + std::to_string(genus));
}

int omega(BasisLabel x, BasisLabel y, int genus) {
    check_label(x, genus);
    check_label(y, genus);
    return omega(x, y);
}

// ---------------------------------------------------------------- HVector

void HVector::add(BasisLabel x, const Integer& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.try_emplace(x, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Integer HVector::coeff(BasisLabel x) const {
    auto it = terms_.find(x);
    return it == terms_.end() ? Integer(0) : it->second;
}

HVector& HVector::operator+=(const HVector& o) {
    for (const auto& [x, c] : o.terms_) add(x, c);
    return *this;
}

HVector& HVector::operator-=(const HVector& o) {
    for (const auto& [x, c] : o.terms_) add(x, -c);
    return *this;
}

HVector operator*(const Integer& c, const HVector& x) {
    HVector r;
    if (c == 0) return r;
    for (const auto& [l, v] : x.terms_) r.terms_[l] = c * v;
    return r;
}

std::string to_string(const HVector& v) {
    if (v.is_zero()) return "0";
    std::string out;
    for (const auto& [x, c] : v.terms()) {
        if (!out.empty()) out += c < 0 ? " - " : " + ";
        else if (c < 0) out += "-";
        Integer m = abs(c);
        if (m != 1) out += m.str() + "*";
        out += to_string(x);
    }
    return out;
}

Integer omega(const HVector& x, const HVector& y) {
    Integer r = 0;
    for (const auto& [l, c] : x.terms()) {
        Integer d = y.coeff(swap_side(l));
        if (d != 0) r += c * d * omega(l, swap_side(l));
    }
    return r;
}

HVector project_to_B(const HVector& v) {
    HVector r;
    for (const auto& [l, c] : v.terms())
        if (l.side == Side::B) r.add(l, c);
    return r;
}

// ---------------------------------------------------------------- cubics

namespace {

// sorts in place, returns the permutation sign (0 on a repeat)
int sort_sign(IndexTriple& t) {
    int s = 1;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j + 1 < 3 - i; ++j)
            if (t[j] > t[j + 1]) {
                std::swap(t[j], t[j + 1]);
                s = -s;
            }
    if (t[0] == t[1] || t[1] == t[2]) return 0;
    return s;
}

void add_to(std::map<IndexTriple, Integer>& m, const IndexTriple& k, const Integer& c) {
    if (c == 0) return;
    auto [it, fresh] = m.try_emplace(k, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) m.erase(it);
    }
}

std::string triple_sum(const std::map<IndexTriple, Integer>& m, char letter, const char* op) {
    if (m.empty()) return "0";
    std::string out;
    for (const auto& [t, c] : m) {
        if (!out.empty()) out += c < 0 ? " - " : " + ";
        else if (c < 0) out += "-";
        Integer mag = abs(c);
        if (mag != 1) out += mag.str() + "*";
        for (int i = 0; i < 3; ++i) {
            if (i) out += op;
            out += letter + std::to_string(t[i]);
        }
    }
    return out;
}

}  // namespace

WedgeCubic WedgeCubic::wedge(BasisLabel x, BasisLabel y, BasisLabel z) {
    if (x.side != y.side || y.side != z.side)
        throw ArgumentError("wedge of labels from different sides");
    WedgeCubic w(x.side);
    w.add({x.index, y.index, z.index}, 1);
    return w;
}

void WedgeCubic::add(IndexTriple ijk, const Integer& c) {
    int s = sort_sign(ijk);
    if (s == 0) return;
    add_to(terms_, ijk, s > 0 ? c : Integer(-c));
}

void WedgeCubic::add(const WedgeCubic& o, const Integer& c) {
    if (o.side_ != side_ && !o.is_zero()) throw ArgumentError("adding wedges of different sides");
    for (const auto& [t, v] : o.terms_) add_to(terms_, t, c * v);
}

Integer WedgeCubic::coeff(IndexTriple ijk) const {
    int s = sort_sign(ijk);
    if (s == 0) return 0;
    auto it = terms_.find(ijk);
    if (it == terms_.end()) return 0;
    return s > 0 ? it->second : Integer(-it->second);
}

WedgeCubic operator*(const Integer& c, const WedgeCubic& w) {
    WedgeCubic r(w.side_);
    r.add(w, c);
    return r;
}

std::string to_string(const WedgeCubic& w) {
    return triple_sum(w.terms(), w.side() == Side::A ? 'a' : 'b', "^");
}

void SymCubic::add(IndexTriple ijk, const Integer& c) {
    std::sort(ijk.begin(), ijk.end());
    add_to(terms_, ijk, c);
}

Integer SymCubic::coeff(IndexTriple ijk) const {
    std::sort(ijk.begin(), ijk.end());
    auto it = terms_.find(ijk);
    return it == terms_.end() ? Integer(0) : it->second;
}

std::string to_string(const SymCubic& s) { return triple_sum(s.terms(), 'b', "."); }

Integer pairing(const WedgeCubic& u, const WedgeCubic& v) {
    if (u.side() != Side::B || v.side() != Side::A)
        throw ArgumentError("pairing expects a B-side wedge and an A-side wedge");
    Integer total = 0;
    for (const auto& [x, cx] : u.terms()) {
        for (const auto& [y, cy] : v.terms()) {
            int m[3][3];
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) m[i][j] = omega(b(x[i]), a(y[j]));
            int det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                      m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                      m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
            if (det != 0) total += cx * cy * det;
        }
    }
    return total;
}

}  // namespace treelie
