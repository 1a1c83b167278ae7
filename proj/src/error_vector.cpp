#include "dmf/error_vector.hpp"

#include <stdexcept>

namespace dmf {

char disposition_char(SplitDisposition d) {
    switch (d) {
        case SplitDisposition::Plus: return '+';
        case SplitDisposition::Minus: return '-';
        default: return '0';
    }
}

ErrorVector ErrorVector::all_skip(int length, Epsilon eps) {
    ErrorVector ev;
    ev.entries.assign(static_cast<std::size_t>(length), SplitDisposition::Skip);
    ev.epsilon = eps;
    return ev;
}

ErrorVector ErrorVector::parse(const std::string& text, Epsilon eps) {
    ErrorVector ev;
    ev.epsilon = eps;
    ev.entries.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '+': ev.entries.push_back(SplitDisposition::Plus); break;
            case '-': ev.entries.push_back(SplitDisposition::Minus); break;
            case '0':
            case 'f': ev.entries.push_back(SplitDisposition::Skip); break;
            default:
                throw std::invalid_argument(
                    std::string("error vector: unexpected character '") + c +
                    "' (expected +, -, 0)");
        }
    }
    return ev;
}

std::string ErrorVector::str() const {
    std::string s;
    s.reserve(entries.size());
    for (SplitDisposition d : entries) s.push_back(disposition_char(d));
    return s;
}

bool ErrorVector::has_skip() const {
    for (SplitDisposition d : entries)
        if (d == SplitDisposition::Skip) return true;
    return false;
}

std::uint64_t gray_position(const ErrorVector& vector) {
    std::uint64_t binary = 0;
    std::uint64_t prev = 0;
    for (SplitDisposition d : vector.entries) {
        if (d == SplitDisposition::Skip)
            throw std::invalid_argument(
                "gray_position: vector must contain no skip entries");
        const std::uint64_t gray_bit = (d == SplitDisposition::Minus) ? 1 : 0;
        prev ^= gray_bit;  // gray-to-binary prefix xor
        binary = (binary << 1) | prev;
    }
    return binary;
}

std::vector<SplitDisposition> signs_at_gray_position(std::uint64_t position,
                                                     int length) {
    const std::uint64_t gray_word = position ^ (position >> 1);
    std::vector<SplitDisposition> entries(static_cast<std::size_t>(length));
    for (int i = 0; i < length; ++i) {
        const bool minus = (gray_word >> (length - 1 - i)) & 1u;
        entries[i] = minus ? SplitDisposition::Minus : SplitDisposition::Plus;
    }
    return entries;
}

}  // namespace dmf
