#pragma once

// Towers of Eisenstein extensions O_K c O_L c O_M ..., each floor presented as
// O_parent[X]/(E(X)). An element of a floor of degree n is a coordinate vector
// over the parent floor in the basis 1, pi, ..., pi^(n-1); storage is the
// flattened vector of ground scalars, coordinate i occupying block i.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ramify/base.hpp"
#include "ramify/extnat.hpp"

namespace ramify {

class Floor;

/// Value-type element of a floor. Holds a non-owning pointer to its floor;
/// floors are shared_ptr-owned and must outlive their elements.
class FloorElement {
public:
    FloorElement() = default;

    [[nodiscard]] const Floor& floor() const { return *floor_; }
    [[nodiscard]] const Floor* floor_ptr() const { return floor_; }
    [[nodiscard]] std::span<const BaseScalar> data() const { return data_; }

    /// Coordinate i as an element of the parent floor (ground floors have
    /// the single coordinate 0, returned as itself).
    [[nodiscard]] FloorElement coord(int i) const;
    [[nodiscard]] const BaseScalar& scalar() const { return data_.front(); }

    [[nodiscard]] bool is_zero() const;

    /// Valuation in this floor's normalization, or the floor's ceiling when
    /// every tracked digit vanishes.
    [[nodiscard]] std::int64_t valuation_or_ceiling() const;

    /// Residue of x / pi^k in F_p; requires v(x) >= k.
    [[nodiscard]] std::uint32_t leading(std::int64_t k) const;
    [[nodiscard]] std::uint32_t residue() const { return leading(0); }

    /// x mod pi^k.
    [[nodiscard]] FloorElement truncate(std::int64_t k) const;

    /// x * pi.
    [[nodiscard]] FloorElement mul_pi() const;

    [[nodiscard]] FloorElement pow(std::uint64_t e) const;

    /// x * s for a ground scalar s.
    [[nodiscard]] FloorElement scaled(const BaseScalar& s) const;

    FloorElement& operator+=(const FloorElement& o);
    FloorElement& operator-=(const FloorElement& o);
    friend FloorElement operator+(FloorElement a, const FloorElement& b) { return a += b; }
    friend FloorElement operator-(FloorElement a, const FloorElement& b) { return a -= b; }
    friend FloorElement operator*(const FloorElement& a, const FloorElement& b);
    FloorElement& operator*=(const FloorElement& o) { return *this = *this * o; }
    FloorElement operator-() const;

    friend bool operator==(const FloorElement& a, const FloorElement& b);

    [[nodiscard]] std::string str() const;

private:
    friend class Floor;
    FloorElement(const Floor* f, std::vector<BaseScalar> data) : floor_(f), data_(std::move(data)) {}

    const Floor* floor_ = nullptr;
    std::vector<BaseScalar> data_;
};

/// Eisenstein polynomial X^n + c_{n-1} X^{n-1} + ... + c_0 over a floor.
struct EisensteinPoly {
    std::vector<FloorElement> coefficients;  // c_0 .. c_{n-1}
    [[nodiscard]] int degree() const { return static_cast<int>(coefficients.size()); }
};

/// A floor of a tower: the ground ring O_K / pi_K^N, or an Eisenstein step over
/// another floor. Immutable after construction.
class Floor : public std::enable_shared_from_this<Floor> {
public:
    static std::shared_ptr<const Floor> ground(const BaseField& field);

    [[nodiscard]] const BaseField& field() const { return field_; }
    [[nodiscard]] Mode mode() const { return field_.mode(); }
    [[nodiscard]] std::uint32_t p() const { return field_.p(); }

    [[nodiscard]] bool is_ground() const { return parent_ == nullptr; }
    [[nodiscard]] int level() const { return level_; }
    /// Degree over the parent floor (1 for the ground).
    [[nodiscard]] int degree() const { return degree_; }
    /// Degree over the ground floor.
    [[nodiscard]] std::int64_t total_degree() const { return static_cast<std::int64_t>(size_); }
    /// Number of ground scalars per element.
    [[nodiscard]] std::size_t size() const { return size_; }
    /// Valuations at or above the ceiling cannot be certified.
    [[nodiscard]] std::int64_t ceiling() const { return ceiling_; }

    [[nodiscard]] const Floor* parent() const { return parent_.get(); }
    [[nodiscard]] std::shared_ptr<const Floor> parent_shared() const { return parent_; }
    [[nodiscard]] const EisensteinPoly& eisenstein() const { return poly_; }

    /// True when `other` is this floor or one of its ancestors.
    [[nodiscard]] bool contains(const Floor& other) const;
    /// Degree of this floor over an ancestor.
    [[nodiscard]] std::int64_t degree_over(const Floor& ancestor) const;

    [[nodiscard]] FloorElement zero() const;
    [[nodiscard]] FloorElement one() const;
    [[nodiscard]] FloorElement from_int(std::int64_t v) const;
    [[nodiscard]] FloorElement from_scalar(const BaseScalar& s) const;
    /// The image of an element of an ancestor floor.
    [[nodiscard]] FloorElement embed(const FloorElement& x) const;
    [[nodiscard]] FloorElement uniformizer() const;
    [[nodiscard]] FloorElement from_coords(const std::vector<FloorElement>& coords) const;

    /// Residue of pi_parent / pi^n, a nonzero element of F_p.
    [[nodiscard]] std::uint32_t norm_ratio_residue() const { return ratio_residue_; }

private:
    friend class FloorElement;
    friend std::shared_ptr<const Floor> attach_eisenstein(std::shared_ptr<const Floor> base, EisensteinPoly poly);
    friend FloorElement udiv(const FloorElement& x, std::int64_t k);

    explicit Floor(const BaseField& f) : field_(f) {}

    BaseField field_;
    std::shared_ptr<const Floor> parent_;
    EisensteinPoly poly_;
    int level_ = 0;
    int degree_ = 1;
    std::size_t size_ = 1;
    std::int64_t ceiling_ = 0;
    std::uint32_t ratio_residue_ = 1;
    // (c_0 / pi_parent)^{-1}, used by exact division by pi.
    FloorElement c0_unit_inverse_;
};

/// Adjoins a root of an Eisenstein polynomial. Throws NotEisenstein.
std::shared_ptr<const Floor> attach_eisenstein(std::shared_ptr<const Floor> base, EisensteinPoly poly);

/// Valuation; INFINITY is never returned for tracked elements: an element
/// whose digits all vanish raises PrecisionExhausted.
ExtNat val(const FloorElement& x);

/// Image of x in the residue field F_p.
std::uint32_t residue(const FloorElement& x);

/// x / pi^k for v(x) >= k. The top k valuation levels of the result are not
/// tracked (zero-filled). Throws NotDivisible.
FloorElement udiv(const FloorElement& x, std::int64_t k);

/// Inverse of a unit of the floor. Throws NotAUnit.
FloorElement unit_inverse(const FloorElement& x);

/// v(E'(pi)) for the floor's Eisenstein polynomial. Throws PrecisionExhausted
/// for inseparable polynomials.
std::int64_t different_exponent(const Floor& floor);

/// v(p) in the floor's normalization: INFINITY in equal characteristic.
ExtNat p_valuation(const Floor& floor);

/// Exponent of the different of `top` over its ancestor `base`, in `top`'s
/// normalization (transitivity of the different through the tower).
std::int64_t relative_different(const Floor& top, const Floor& base);

} // namespace ramify
