#include "dmf/target.hpp"

#include <cmath>
#include <stdexcept>

namespace dmf {

TargetCF TargetCF::make(std::int64_t numerator, int accuracy) {
    if (accuracy < 1 || accuracy > 62)
        throw std::invalid_argument("accuracy must be in 1..62");
    if (numerator <= 0 || numerator >= (std::int64_t{1} << accuracy))
        throw std::invalid_argument("target must lie strictly in (0,1)");
    while (numerator % 2 == 0) {
        numerator /= 2;
        --accuracy;
    }
    if (accuracy < 1) accuracy = 1;  // unreachable: x/2 with odd x keeps n >= 1
    return TargetCF{numerator, accuracy};
}

std::string TargetCF::str() const {
    return std::to_string(numerator) + "/" +
           std::to_string(std::int64_t{1} << accuracy);
}

TargetCF complement(const TargetCF& t) {
    return TargetCF::make((std::int64_t{1} << t.accuracy) - t.numerator,
                          t.accuracy);
}

namespace {

std::int64_t parse_int(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("malformed target: empty field");
    std::size_t used = 0;
    std::int64_t v;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed target: '" + s + "'");
    }
    if (used != s.size())
        throw std::invalid_argument("malformed target: '" + s + "'");
    return v;
}

}  // namespace

TargetCF parse_target(const std::string& text) {
    if (const auto at = text.find('@'); at != std::string::npos) {
        const Rational value = parse_decimal(text.substr(0, at));
        const int n = static_cast<int>(parse_int(text.substr(at + 1)));
        if (n < 1 || n > 62)
            throw std::invalid_argument("accuracy must be in 1..62");
        const Rational scaled = value * pow2<Rational>(n);
        if (boost::multiprecision::denominator(scaled) != 1)
            throw std::invalid_argument(
                "'" + text + "' is not exactly representable at accuracy " +
                std::to_string(n));
        return TargetCF::make(
            boost::multiprecision::numerator(scaled).convert_to<std::int64_t>(), n);
    }

    const auto slash = text.find('/');
    if (slash == std::string::npos)
        throw std::invalid_argument(
            "malformed target '" + text + "': expected x/d or decimal@n");
    const std::int64_t num = parse_int(text.substr(0, slash));
    const std::int64_t den = parse_int(text.substr(slash + 1));
    if (den <= 0 || (den & (den - 1)) != 0)
        throw std::invalid_argument("denominator of '" + text +
                                    "' is not a power of two");
    int n = 0;
    for (std::int64_t d = den; d > 1; d >>= 1) ++n;
    return TargetCF::make(num, n);
}

TargetCF approximate_cf(double value, double tolerance, int accuracy_cap) {
    if (!(tolerance > 0.0))
        throw std::invalid_argument("tolerance must be positive");
    if (!(value > 0.0) || !(value < 1.0))
        throw std::invalid_argument("value must lie in (0,1)");

    // Exact comparison: binary64 inputs convert to rationals losslessly.
    const Rational v{value};
    const Rational tol{tolerance};
    for (int n = 1; n <= accuracy_cap; ++n) {
        const Rational scaled = v * pow2<Rational>(n);
        using boost::multiprecision::cpp_int;
        const cpp_int floor_x =
            boost::multiprecision::numerator(scaled) /
            boost::multiprecision::denominator(scaled);
        std::int64_t lo = floor_x.convert_to<std::int64_t>();
        std::int64_t x;
        const Rational frac = scaled - Rational(floor_x);
        if (frac * 2 < 1)
            x = lo;
        else if (frac * 2 > 1)
            x = lo + 1;
        else
            x = (lo % 2 != 0) ? lo : lo + 1;  // tie: the odd candidate
        const std::int64_t max_x = (std::int64_t{1} << n) - 1;
        if (x < 1) x = 1;
        if (x > max_x) x = max_x;
        Rational err = Rational(x) / pow2<Rational>(n) - v;
        if (err < 0) err = -err;
        if (err <= tol) return TargetCF::make(x, n);
    }
    throw std::invalid_argument(
        "no dyadic approximation within tolerance at accuracy <= " +
        std::to_string(accuracy_cap));
}

}  // namespace dmf
