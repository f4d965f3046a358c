#pragma once

#include <cstdint>
#include <compare>
#include <string>

#include "vaform/errors.hpp"

namespace vaform {

/// Element of (1/2)Z, stored as twice its value. Conformal weights and
/// shifted mode indices live here.
struct HalfInt {
    std::int64_t twice = 0;

    constexpr HalfInt() = default;
    constexpr HalfInt(int n) : twice(2 * static_cast<std::int64_t>(n)) {}
    static constexpr HalfInt from_twice(std::int64_t t) {
        HalfInt h;
        h.twice = t;
        return h;
    }
    static constexpr HalfInt half() { return from_twice(1); }

    constexpr bool is_integer() const { return twice % 2 == 0; }
    constexpr std::int64_t floor() const {
        std::int64_t q = twice / 2;
        if (twice < 0 && twice % 2 != 0) --q;
        return q;
    }
    /// Integer value; caller must know the value is integral.
    constexpr std::int64_t as_int() const { return twice / 2; }

    friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return from_twice(a.twice + b.twice); }
    friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return from_twice(a.twice - b.twice); }
    friend constexpr HalfInt operator-(HalfInt a) { return from_twice(-a.twice); }
    HalfInt& operator+=(HalfInt b) { twice += b.twice; return *this; }
    HalfInt& operator-=(HalfInt b) { twice -= b.twice; return *this; }
    friend constexpr auto operator<=>(HalfInt a, HalfInt b) = default;

    std::string str() const {
        if (is_integer()) return std::to_string(twice / 2);
        return std::to_string(twice) + "/2";
    }
};

inline HalfInt parse_halfint(const std::string& s) {
    std::size_t slash = s.find('/');
    try {
        if (slash == std::string::npos) return HalfInt(static_cast<int>(std::stoll(s)));
        std::int64_t num = std::stoll(s.substr(0, slash));
        std::int64_t den = std::stoll(s.substr(slash + 1));
        if (den == 2) return HalfInt::from_twice(num);
        if (den == 1) return HalfInt(static_cast<int>(num));
    } catch (const std::exception&) {
    }
    throw ParseError("not a half-integer: '" + s + "'");
}

} // namespace vaform
