#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace ramify {

/// Nonnegative integer extended by a maximal element INFINITY.
class ExtNat {
public:
    constexpr ExtNat() = default;
    constexpr ExtNat(std::int64_t v) : value_(v) {}  // NOLINT(google-explicit-constructor)

    static constexpr ExtNat infinity() {
        ExtNat r;
        r.value_ = kInf;
        return r;
    }

    [[nodiscard]] constexpr bool is_infinite() const { return value_ == kInf; }
    [[nodiscard]] constexpr bool is_finite() const { return value_ != kInf; }

    [[nodiscard]] std::int64_t value() const {
        if (is_infinite()) throw std::logic_error("ExtNat: value() of INFINITY");
        return value_;
    }

    constexpr auto operator<=>(const ExtNat&) const = default;

    friend constexpr ExtNat operator+(ExtNat a, ExtNat b) {
        if (a.is_infinite() || b.is_infinite()) return infinity();
        return ExtNat(a.value_ + b.value_);
    }

    /// k * a with k >= 0; 0 * INFINITY is taken to be 0.
    friend constexpr ExtNat operator*(std::int64_t k, ExtNat a) {
        if (k == 0) return ExtNat(0);
        if (a.is_infinite()) return infinity();
        return ExtNat(k * a.value_);
    }

    [[nodiscard]] std::string str() const { return is_infinite() ? "inf" : std::to_string(value_); }

    friend std::ostream& operator<<(std::ostream& os, ExtNat a) { return os << a.str(); }

private:
    static constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();
    std::int64_t value_ = 0;
};

inline constexpr ExtNat min(ExtNat a, ExtNat b) { return a < b ? a : b; }

} // namespace ramify
