#pragma once

#include <compare>
#include <cstdint>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

#include "spunembed/errors.hpp"

namespace spunembed {

/// Checked signed 128-bit integer. Every arithmetic operator throws
/// OverflowError when the exact result does not fit, so invariants computed
/// with it are exact or loudly absent, never silently wrong.
class Int128 {
public:
    constexpr Int128() = default;
    constexpr Int128(long long x) : v_(x) {} // NOLINT(google-explicit-constructor)
    constexpr Int128(int x) : v_(x) {}       // NOLINT(google-explicit-constructor)

    static constexpr Int128 raw(__int128 x) {
        Int128 r;
        r.v_ = x;
        return r;
    }

    constexpr __int128 value() const { return v_; }

    friend constexpr bool operator==(Int128 a, Int128 b) { return a.v_ == b.v_; }
    friend constexpr std::strong_ordering operator<=>(Int128 a, Int128 b) {
        if (a.v_ < b.v_) return std::strong_ordering::less;
        if (a.v_ > b.v_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    friend Int128 operator+(Int128 a, Int128 b) {
        // compute with wraparound-free unsigned arithmetic, then range check
        unsigned __int128 r = static_cast<unsigned __int128>(a.v_) +
                              static_cast<unsigned __int128>(b.v_);
        __int128 s = static_cast<__int128>(r);
        if ((a.v_ >= 0) == (b.v_ >= 0) && (s >= 0) != (a.v_ >= 0))
            throw OverflowError("Int128 addition overflow");
        return raw(s);
    }
    friend Int128 operator-(Int128 a, Int128 b) {
        unsigned __int128 r = static_cast<unsigned __int128>(a.v_) -
                              static_cast<unsigned __int128>(b.v_);
        __int128 s = static_cast<__int128>(r);
        if ((a.v_ >= 0) != (b.v_ >= 0) && (s >= 0) != (a.v_ >= 0))
            throw OverflowError("Int128 subtraction overflow");
        return raw(s);
    }
    friend Int128 operator*(Int128 a, Int128 b) {
        if (a.v_ == 0 || b.v_ == 0) return Int128{};
        bool negative = (a.v_ < 0) != (b.v_ < 0);
        unsigned __int128 ua = magnitude(a.v_);
        unsigned __int128 ub = magnitude(b.v_);
        if (ua > max_unsigned() / ub) throw OverflowError("Int128 multiplication overflow");
        unsigned __int128 r = ua * ub;
        unsigned __int128 limit = negative ? min_magnitude() : max_magnitude();
        if (r > limit) throw OverflowError("Int128 multiplication overflow");
        if (negative) return raw(static_cast<__int128>(~r + 1));
        return raw(static_cast<__int128>(r));
    }
    friend Int128 operator-(Int128 a) {
        if (a.v_ == min_value()) throw OverflowError("Int128 negation overflow");
        return raw(-a.v_);
    }

    /// Truncated division (C semantics). Divisor must be nonzero.
    friend Int128 operator/(Int128 a, Int128 b) {
        if (b.v_ == 0) throw std::domain_error("Int128 division by zero");
        if (a.v_ == min_value() && b.v_ == -1) throw OverflowError("Int128 division overflow");
        return raw(a.v_ / b.v_);
    }
    friend Int128 operator%(Int128 a, Int128 b) {
        if (b.v_ == 0) throw std::domain_error("Int128 remainder by zero");
        if (a.v_ == min_value() && b.v_ == -1) throw OverflowError("Int128 remainder overflow");
        return raw(a.v_ % b.v_);
    }

    Int128& operator+=(Int128 b) { return *this = *this + b; }
    Int128& operator-=(Int128 b) { return *this = *this - b; }
    Int128& operator*=(Int128 b) { return *this = *this * b; }

private:
    static constexpr __int128 min_value() { return static_cast<__int128>(1) << 127; }
    static constexpr unsigned __int128 max_unsigned() {
        return ~static_cast<unsigned __int128>(0);
    }
    static constexpr unsigned __int128 max_magnitude() {
        return (~static_cast<unsigned __int128>(0)) >> 1; // 2^127 - 1
    }
    static constexpr unsigned __int128 min_magnitude() {
        return (static_cast<unsigned __int128>(1)) << 127; // 2^127
    }
    static constexpr unsigned __int128 magnitude(__int128 x) {
        return x < 0 ? ~static_cast<unsigned __int128>(x) + 1
                     : static_cast<unsigned __int128>(x);
    }

    __int128 v_{0};
};

inline Int128 abs(Int128 a) { return a < Int128{0} ? -a : a; }

inline Int128 gcd(Int128 a, Int128 b) {
    a = abs(a);
    b = abs(b);
    while (b != Int128{0}) {
        Int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline bool fits_int64(Int128 a) {
    return a.value() >= std::numeric_limits<std::int64_t>::min() &&
           a.value() <= std::numeric_limits<std::int64_t>::max();
}

inline std::int64_t to_int64(Int128 a) {
    if (!fits_int64(a)) throw OverflowError("Int128 does not fit in 64 bits");
    return static_cast<std::int64_t>(a.value());
}

inline std::string to_string(Int128 a) {
    if (a == Int128{0}) return "0";
    unsigned __int128 m =
        a < Int128{0} ? ~static_cast<unsigned __int128>(a.value()) + 1
                      : static_cast<unsigned __int128>(a.value());
    std::string digits;
    while (m != 0) {
        digits.push_back(static_cast<char>('0' + static_cast<int>(m % 10)));
        m /= 10;
    }
    if (a < Int128{0}) digits.push_back('-');
    return {digits.rbegin(), digits.rend()};
}

inline std::ostream& operator<<(std::ostream& os, Int128 a) { return os << to_string(a); }

} // namespace spunembed
