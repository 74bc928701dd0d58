#pragma once

#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <tuple>

#include <boost/multiprecision/cpp_int.hpp>

namespace treelie {

using Integer = boost::multiprecision::cpp_int;

inline std::string to_string(const Integer& x) { return x.str(); }

struct OverflowError : std::overflow_error {
    OverflowError() : std::overflow_error("int64 overflow") {}
};

/// 64-bit integer that throws OverflowError instead of wrapping.
/// Used as the fast scalar of the lattice engine; callers retry with Integer.
class Checked64 {
public:
    constexpr Checked64() = default;
    constexpr Checked64(std::int64_t v) : v_(v) {}  // NOLINT implicit on purpose
    explicit Checked64(const Integer& x) {
        if (x > std::numeric_limits<std::int64_t>::max() ||
            x < std::numeric_limits<std::int64_t>::min())
            throw OverflowError();
        v_ = static_cast<std::int64_t>(x);
    }

    std::int64_t value() const { return v_; }
    explicit operator Integer() const { return Integer(v_); }

    friend Checked64 operator+(Checked64 a, Checked64 b) {
        std::int64_t r;
        if (__builtin_add_overflow(a.v_, b.v_, &r)) throw OverflowError();
        return r;
    }
    friend Checked64 operator-(Checked64 a, Checked64 b) {
        std::int64_t r;
        if (__builtin_sub_overflow(a.v_, b.v_, &r)) throw OverflowError();
        return r;
    }
    friend Checked64 operator*(Checked64 a, Checked64 b) {
        std::int64_t r;
        if (__builtin_mul_overflow(a.v_, b.v_, &r)) throw OverflowError();
        return r;
    }
    // truncating division, like int64 and cpp_int
    friend Checked64 operator/(Checked64 a, Checked64 b) {
        if (a.v_ == std::numeric_limits<std::int64_t>::min() && b.v_ == -1) throw OverflowError();
        return a.v_ / b.v_;
    }
    friend Checked64 operator%(Checked64 a, Checked64 b) {
        if (b.v_ == -1) return 0;
        return a.v_ % b.v_;
    }
    Checked64 operator-() const {
        if (v_ == std::numeric_limits<std::int64_t>::min()) throw OverflowError();
        return -v_;
    }
    Checked64& operator+=(Checked64 o) { return *this = *this + o; }
    Checked64& operator-=(Checked64 o) { return *this = *this - o; }
    Checked64& operator*=(Checked64 o) { return *this = *this * o; }
    Checked64& operator/=(Checked64 o) { return *this = *this / o; }
    Checked64& operator%=(Checked64 o) { return *this = *this % o; }

    friend auto operator<=>(Checked64, Checked64) = default;
    friend bool operator==(Checked64, Checked64) = default;

    friend std::ostream& operator<<(std::ostream& os, Checked64 x) { return os << x.v_; }

private:
    std::int64_t v_ = 0;
};

// Uniform conversions so templated code can move between scalars.
template <class S>
S from_integer(const Integer& x) {
    return S(x);
}
template <class S>
Integer to_integer(const S& x) {
    return Integer(x);
}

template <class S>
S abs_value(const S& x) {
    return x < S(0) ? -x : x;
}

/// floor division (b > 0)
template <class S>
S floor_div(const S& a, const S& b) {
    S q = a / b;
    if ((a % b) != S(0) && (a < S(0)) != (b < S(0))) q -= S(1);
    return q;
}

/// Extended gcd: returns (g, s, t) with s*a + t*b = g, g >= 0.
template <class S>
std::tuple<S, S, S> xgcd(S a, S b) {
    S s0(1), s1(0), t0(0), t1(1);
    while (b != S(0)) {
        S q = a / b;
        S r = a - q * b;
        a = b;
        b = r;
        S s2 = s0 - q * s1;
        s0 = s1;
        s1 = s2;
        S t2 = t0 - q * t1;
        t0 = t1;
        t1 = t2;
    }
    if (a < S(0)) return {-a, -s0, -t0};
    return {a, s0, t0};
}

inline std::string to_string(Checked64 x) { return std::to_string(x.value()); }

/// Thin wrapper around Integer with only non-template constructors, so it can
/// serve as an Eigen scalar (cpp_int's converting constructors trip Eigen's
/// type probing under C++20).
class BigInt {
public:
    BigInt() = default;
    BigInt(std::int64_t v) : v_(v) {}  // NOLINT
    BigInt(int v) : v_(v) {}           // NOLINT
    explicit BigInt(const Integer& v) : v_(v) {}
    explicit BigInt(Checked64 v) : v_(v.value()) {}

    const Integer& value() const { return v_; }
    explicit operator Integer() const { return v_; }

    friend BigInt operator+(const BigInt& a, const BigInt& b) { return BigInt(Integer(a.v_ + b.v_)); }
    friend BigInt operator-(const BigInt& a, const BigInt& b) { return BigInt(Integer(a.v_ - b.v_)); }
    friend BigInt operator*(const BigInt& a, const BigInt& b) { return BigInt(Integer(a.v_ * b.v_)); }
    friend BigInt operator/(const BigInt& a, const BigInt& b) { return BigInt(Integer(a.v_ / b.v_)); }
    friend BigInt operator%(const BigInt& a, const BigInt& b) { return BigInt(Integer(a.v_ % b.v_)); }
    BigInt operator-() const { return BigInt(Integer(-v_)); }
    BigInt& operator+=(const BigInt& o) {
        v_ += o.v_;
        return *this;
    }
    BigInt& operator-=(const BigInt& o) {
        v_ -= o.v_;
        return *this;
    }
    BigInt& operator*=(const BigInt& o) {
        v_ *= o.v_;
        return *this;
    }
    BigInt& operator/=(const BigInt& o) {
        v_ /= o.v_;
        return *this;
    }
    BigInt& operator%=(const BigInt& o) {
        v_ %= o.v_;
        return *this;
    }

    friend bool operator==(const BigInt& a, const BigInt& b) { return a.v_ == b.v_; }
    friend bool operator!=(const BigInt& a, const BigInt& b) { return a.v_ != b.v_; }
    friend bool operator<(const BigInt& a, const BigInt& b) { return a.v_ < b.v_; }
    friend bool operator>(const BigInt& a, const BigInt& b) { return a.v_ > b.v_; }
    friend bool operator<=(const BigInt& a, const BigInt& b) { return a.v_ <= b.v_; }
    friend bool operator>=(const BigInt& a, const BigInt& b) { return a.v_ >= b.v_; }

    friend std::ostream& operator<<(std::ostream& os, const BigInt& x) { return os << x.v_; }

private:
    Integer v_;
};

inline std::string to_string(const BigInt& x) { return x.value().str(); }

}  // namespace treelie
