#pragma once

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

namespace boost {
inline bool operator==(const rational<long>& a, int b) { return a.denominator() == 1 && a.numerator() == b; }
inline bool operator==(const rational<long>& a, long b) { return a.denominator() == 1 && a.numerator() == b; }
inline bool operator==(const rational<long>& a, long long b) { return a.denominator() == 1 && a.numerator() == b; }
} // namespace boost

namespace ramify {

using Rational = boost::rational<std::int64_t>;

/// Parses "a", "a/b" into a Rational. Throws ValidationError on junk.
Rational parse_rational(const std::string& text);

inline std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

} // namespace ramify
