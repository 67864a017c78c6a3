#pragma once

// Exact scalars of the ground field K, either F_p((t)) (equal characteristic)
// or Q_p (mixed characteristic), truncated at a fixed absolute precision N:
// every scalar is an element of O_K / pi_K^N.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ramify/extnat.hpp"

namespace ramify {

enum class Mode { Equal, Mixed };

std::string to_string(Mode m);

/// p-adic valuation of a positive integer.
int vp(std::int64_t n, std::int64_t p);

bool is_prime(std::uint32_t p);

/// Residue field description. Only prime fields (f = 1) are supported.
struct ResidueDesc {
    std::uint32_t p = 2;
    std::uint32_t f = 1;

    void validate() const;
};

class BaseScalar;

/// The ground ring O_K / pi_K^N. Cheap to copy.
class BaseField {
public:
    static constexpr int kMaxEqualPrecision = 64;

    BaseField(Mode mode, std::uint32_t p, int precision);

    static BaseField equal(std::uint32_t p, int precision) { return {Mode::Equal, p, precision}; }
    static BaseField mixed(std::uint32_t p, int precision) { return {Mode::Mixed, p, precision}; }

    /// Largest precision supported for p in mixed mode (p^N must fit in 62 bits).
    static int max_mixed_precision(std::uint32_t p);

    [[nodiscard]] Mode mode() const { return mode_; }
    [[nodiscard]] std::uint32_t p() const { return p_; }
    [[nodiscard]] int precision() const { return prec_; }
    /// p^N in mixed mode; unused (0) in equal mode.
    [[nodiscard]] std::uint64_t modulus() const { return modulus_; }

    [[nodiscard]] BaseScalar zero() const;
    [[nodiscard]] BaseScalar one() const;
    /// The image of an integer (reduced mod p in equal mode).
    [[nodiscard]] BaseScalar from_int(std::int64_t v) const;
    /// pi_K: t in equal mode, p in mixed mode.
    [[nodiscard]] BaseScalar uniformizer() const;
    /// sum of digit * pi_K^power; digits are integers (reduced per mode).
    [[nodiscard]] BaseScalar from_terms(const std::vector<std::pair<std::int64_t, int>>& terms) const;
    /// p^v * (unit part mod p^N); zero in equal mode when v > 0.
    [[nodiscard]] BaseScalar from_p_power(int v, std::uint64_t unit_residue_mod) const;

    bool operator==(const BaseField&) const = default;

private:
    Mode mode_;
    std::uint32_t p_;
    int prec_;
    std::uint64_t modulus_ = 0;
};

/// Element of O_K / pi_K^N.
class BaseScalar {
public:
    BaseScalar() = default;

    [[nodiscard]] const BaseField& field() const { return field_; }
    [[nodiscard]] Mode mode() const { return field_.mode(); }
    [[nodiscard]] std::uint32_t p() const { return field_.p(); }
    [[nodiscard]] int precision() const { return field_.precision(); }

    /// Mixed mode representative in [0, p^N).
    [[nodiscard]] std::uint64_t residue_value() const { return value_; }
    /// Equal mode coefficient of t^k (k < N).
    [[nodiscard]] std::uint32_t coefficient(int k) const { return coeffs_[static_cast<std::size_t>(k)]; }

    [[nodiscard]] bool is_zero() const;

    /// Valuation, or N when every tracked digit vanishes.
    [[nodiscard]] int valuation_or_precision() const;
    /// Valuation; throws PrecisionExhausted when indistinguishable from zero.
    [[nodiscard]] ExtNat val() const;

    /// Residue of s / pi_K^k in F_p. Requires val >= k (digits below k ignored).
    [[nodiscard]] std::uint32_t leading(int k) const;
    [[nodiscard]] std::uint32_t residue() const { return leading(0); }

    /// s / pi_K^k for val(s) >= k. The top k digits of the result are unknown
    /// and returned as zero. Throws NotDivisible.
    [[nodiscard]] BaseScalar shift_down(int k) const;
    /// s * pi_K^k.
    [[nodiscard]] BaseScalar shift_up(int k) const;
    /// s mod pi_K^k.
    [[nodiscard]] BaseScalar truncate(int k) const;

    BaseScalar& operator+=(const BaseScalar& o);
    BaseScalar& operator-=(const BaseScalar& o);
    BaseScalar& operator*=(const BaseScalar& o);
    friend BaseScalar operator+(BaseScalar a, const BaseScalar& b) { return a += b; }
    friend BaseScalar operator-(BaseScalar a, const BaseScalar& b) { return a -= b; }
    friend BaseScalar operator*(BaseScalar a, const BaseScalar& b) { return a *= b; }
    BaseScalar operator-() const;

    [[nodiscard]] BaseScalar pow(std::uint64_t e) const;

    friend bool operator==(const BaseScalar& a, const BaseScalar& b);

    [[nodiscard]] std::string str() const;

private:
    friend class BaseField;
    explicit BaseScalar(const BaseField& f) : field_(f) {}

    BaseField field_{Mode::Mixed, 2, 1};
    std::uint64_t value_ = 0;                                        // mixed
    std::array<std::uint8_t, BaseField::kMaxEqualPrecision> coeffs_{};  // equal
};

/// A Teichmueller digit: residue r in [0, p) with its canonical lift.
struct Digit {
    std::uint32_t residue = 0;
    BaseScalar lift;
};

/// Teichmueller representative of r at the field's precision: the unique
/// root of x^p = x congruent to r mod p.
BaseScalar teichmuller_lift(const BaseField& field, std::uint32_t r);

/// pi_K-adic digits with Teichmueller coefficients: s = sum d_k pi_K^k mod pi_K^N.
std::vector<Digit> digit_expand_base(const BaseScalar& s);

/// Inverse of sum d_k pi_K^k.
BaseScalar reconstruct_base(const BaseField& field, const std::vector<Digit>& digits);

/// Inverse of a unit. Throws NotAUnit when v(s) > 0.
BaseScalar unit_inverse(const BaseScalar& s);

/// Multiplicative inverse of a nonzero residue mod p.
std::uint32_t residue_inverse(std::uint32_t r, std::uint32_t p);

} // namespace ramify
