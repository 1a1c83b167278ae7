#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dmf {

/// Exact-rational scalar used by the oracle backend. The float backend is
/// plain binary64; every engine routine is templated over the two.
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& v) { return v.convert_to<double>(); }
inline double to_double(double v) { return v; }

/// 2^n as an exact integer-valued scalar.
template <class S>
S pow2(int n) {
    S v{1};
    for (int i = 0; i < n; ++i) v *= S{2};
    return v;
}

template <>
inline double pow2<double>(int n) {
    return static_cast<double>(std::uint64_t{1} << n);
}

/// An error magnitude held as an exact decimal fraction, so that the
/// rational backend sees e.g. "0.07" as 7/100 rather than the nearest
/// binary64. Accepts plain decimals ("0.07") and percentages ("7%").
struct Epsilon {
    std::int64_t num{0};
    std::int64_t den{1};

    static Epsilon parse(const std::string& text);
    static Epsilon from_parts(std::int64_t num, std::int64_t den);

    template <class S>
    S as() const {
        return S(num) / S(den);
    }

    bool is_zero() const { return num == 0; }
    std::string str() const;

    friend bool operator==(const Epsilon&, const Epsilon&) = default;
};

template <>
inline double Epsilon::as<double>() const {
    return static_cast<double>(num) / static_cast<double>(den);
}

/// Parses a decimal literal (optionally signed) into an exact rational.
Rational parse_decimal(const std::string& text);

}  // namespace dmf
