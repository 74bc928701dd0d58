#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "treelie/integer.hpp"

namespace treelie {

enum class Side : std::uint8_t { A = 0, B = 1 };

inline constexpr int kMaxIndex = 63;  // label codes must fit in one byte

struct BasisLabel {
    Side side = Side::A;
    int index = 1;

    // a_1 < ... < a_63 < b_1 < ... ; this is the order used everywhere
    constexpr int code() const { return (side == Side::A ? 0 : 64) + index; }
    static constexpr BasisLabel from_code(int c) {
        return c < 64 ? BasisLabel{Side::A, c} : BasisLabel{Side::B, c - 64};
    }

    friend constexpr bool operator==(BasisLabel x, BasisLabel y) { return x.code() == y.code(); }
    friend constexpr auto operator<=>(BasisLabel x, BasisLabel y) { return x.code() <=> y.code(); }
};

constexpr BasisLabel a(int i) { return {Side::A, i}; }
constexpr BasisLabel b(int i) { return {Side::B, i}; }

constexpr BasisLabel swap_side(BasisLabel x) {
    return {x.side == Side::A ? Side::B : Side::A, x.index};
}

std::string to_string(BasisLabel x);
/// Parses `a3` / `b12`. Throws ParseError.
BasisLabel parse_label(std::string_view text);
/// Throws ConfigError when the index is outside 1..genus.
void check_label(BasisLabel x, int genus);

/// ω(x,y): +1 on (a_i,b_i), -1 on (b_i,a_i), 0 otherwise.
constexpr int omega(BasisLabel x, BasisLabel y) {
    if (x.index != y.index || x.side == y.side) return 0;
    return x.side == Side::A ? 1 : -1;
}
/// Same, validating both labels against the genus.
int omega(BasisLabel x, BasisLabel y, int genus);

/// Element of H: sparse integer combination of basis labels.
class HVector {
public:
    HVector() = default;
    HVector(BasisLabel x) { terms_[x] = 1; }  // NOLINT

    void add(BasisLabel x, const Integer& c);
    Integer coeff(BasisLabel x) const;
    const std::map<BasisLabel, Integer>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    HVector& operator+=(const HVector& o);
    HVector& operator-=(const HVector& o);
    friend HVector operator+(HVector x, const HVector& y) { return x += y; }
    friend HVector operator-(HVector x, const HVector& y) { return x -= y; }
    friend HVector operator*(const Integer& c, const HVector& x);
    friend bool operator==(const HVector&, const HVector&) = default;

private:
    std::map<BasisLabel, Integer> terms_;
};

std::string to_string(const HVector& v);

/// ω extended bilinearly.
Integer omega(const HVector& x, const HVector& y);

/// Projection on B parallel to A.
HVector project_to_B(const HVector& v);

using IndexTriple = std::array<int, 3>;

/// Element of Λ³A or Λ³B, stored on strictly increasing index triples.
class WedgeCubic {
public:
    explicit WedgeCubic(Side side = Side::B) : side_(side) {}

    /// x∧y∧z for same-side labels; reorders with the permutation sign.
    static WedgeCubic wedge(BasisLabel x, BasisLabel y, BasisLabel z);

    Side side() const { return side_; }
    void add(IndexTriple ijk, const Integer& c);  // ijk in any order, sign applied
    void add(const WedgeCubic& o, const Integer& c = 1);
    Integer coeff(IndexTriple ijk) const;
    const std::map<IndexTriple, Integer>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    WedgeCubic& operator+=(const WedgeCubic& o) {
        add(o);
        return *this;
    }
    friend WedgeCubic operator*(const Integer& c, const WedgeCubic& w);
    friend bool operator==(const WedgeCubic&, const WedgeCubic&) = default;

private:
    Side side_;
    std::map<IndexTriple, Integer> terms_;
};

std::string to_string(const WedgeCubic& w);

/// Element of S³B on non-decreasing index triples.
class SymCubic {
public:
    void add(IndexTriple ijk, const Integer& c);  // any order
    Integer coeff(IndexTriple ijk) const;
    const std::map<IndexTriple, Integer>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    friend bool operator==(const SymCubic&, const SymCubic&) = default;

private:
    std::map<IndexTriple, Integer> terms_;
};

std::string to_string(const SymCubic& s);

/// <u, v> = det(ω(x_i, y_j)) extended bilinearly; u in Λ³B, v in Λ³A.
Integer pairing(const WedgeCubic& u, const WedgeCubic& v);

}  // namespace treelie
