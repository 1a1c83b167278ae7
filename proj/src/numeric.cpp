#include "dmf/numeric.hpp"

#include <cctype>
#include <cstdlib>
#include <numeric>

namespace dmf {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rational parse_decimal(const std::string& text) {
    std::string s = text;
    bool negative = false;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        negative = (s[0] == '-');
        s.erase(0, 1);
    }
    const auto dot = s.find('.');
    std::string int_part = (dot == std::string::npos) ? s : s.substr(0, dot);
    std::string frac_part = (dot == std::string::npos) ? "" : s.substr(dot + 1);
    if (int_part.empty() && frac_part.empty())
        throw std::invalid_argument("malformed decimal: '" + text + "'");
    if (int_part.empty()) int_part = "0";
    if (!all_digits(int_part) || (!frac_part.empty() && !all_digits(frac_part)))
        throw std::invalid_argument("malformed decimal: '" + text + "'");

    using Int = boost::multiprecision::cpp_int;
    Int num{int_part};
    Int den{1};
    for (char c : frac_part) {
        num = num * 10 + (c - '0');
        den *= 10;
    }
    if (negative) num = -num;
    return Rational(num, den);
}

Epsilon Epsilon::parse(const std::string& text) {
    std::string s = text;
    std::int64_t extra_den = 1;
    if (!s.empty() && s.back() == '%') {
        s.pop_back();
        extra_den = 100;
    }
    const Rational r = parse_decimal(s);
    const Rational scaled = r / extra_den;
    const auto num = boost::multiprecision::numerator(scaled);
    const auto den = boost::multiprecision::denominator(scaled);
    if (num > std::int64_t{1} << 62 || den > std::int64_t{1} << 62)
        throw std::invalid_argument("epsilon out of range: '" + text + "'");
    return from_parts(num.convert_to<std::int64_t>(),
                      den.convert_to<std::int64_t>());
}

Epsilon Epsilon::from_parts(std::int64_t num, std::int64_t den) {
    if (den <= 0) throw std::invalid_argument("epsilon: non-positive denominator");
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    Epsilon e{num / (g ? g : 1), den / (g ? g : 1)};
    if (e.num < 0 || e.num >= e.den)
        throw std::invalid_argument("epsilon must lie in [0,1)");
    return e;
}

std::string Epsilon::str() const {
    if (num == 0) return "0";
    return std::to_string(num) + "/" + std::to_string(den);
}

}  // namespace dmf
