// Exact rational money values and formatting helpers.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

namespace debtswap {

using Integer = boost::multiprecision::cpp_int;
using Money = boost::multiprecision::cpp_rational;

inline Integer numerator(const Money& m) { return boost::multiprecision::numerator(m); }
inline Integer denominator(const Money& m) { return boost::multiprecision::denominator(m); }

inline bool is_integral(const Money& m) { return denominator(m) == 1; }

// "3" for integral values, "7/2" otherwise.
inline std::string money_to_string(const Money& m) {
    if (is_integral(m)) return numerator(m).str();
    return numerator(m).str() + "/" + denominator(m).str();
}

// Accepts the formats produced by money_to_string: an optionally signed decimal
// integer or a pair "num/den" with den > 0 after sign normalization.
inline std::optional<Money> money_from_string(const std::string& text) {
    if (text.empty()) return std::nullopt;
    auto is_int = [](const std::string& s) {
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            if (!is_int(text)) return std::nullopt;
            return Money(Integer(text));
        }
        const std::string num = text.substr(0, slash);
        const std::string den = text.substr(slash + 1);
        if (!is_int(num) || !is_int(den)) return std::nullopt;
        Integer d(den);
        if (d == 0) return std::nullopt;
        return Money(Integer(num), d);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

}  // namespace debtswap
