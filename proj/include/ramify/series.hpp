#pragma once

// Power series attached to an extension: the canonical Teichmueller digit
// series of pi_K in pi_L, general integral series F with F(pi_L) = pi_K, and
// the operations on them used by the rest of the library.

#include <cstdint>
#include <vector>

#include "ramify/extension.hpp"

namespace ramify {

/// sum_{h < H} a_h X^{h+n} with Teichmueller digits a_h, stored by residue.
struct DigitSeries {
    std::uint32_t p = 2;
    std::int64_t n = 0;
    std::vector<std::uint32_t> digits;

    [[nodiscard]] std::int64_t horizon() const { return static_cast<std::int64_t>(digits.size()); }
    bool operator==(const DigitSeries&) const = default;
};

/// sum_{h < H} coeffs[h] X^{h+n} with coefficients in `coefficient_floor`.
/// Exact modulo X^{n+H}.
struct GeneralSeries {
    std::int64_t n = 0;
    const Floor* coefficient_floor = nullptr;
    std::vector<FloorElement> coeffs;

    [[nodiscard]] std::int64_t horizon() const { return static_cast<std::int64_t>(coeffs.size()); }
};

const Floor& ground_of(const Floor& f);

/// Greedy Teichmueller digit expansion of `target` (valuation n) in powers of
/// the floor's uniformizer, H digits. Throws PrecisionExhausted when n + H
/// exceeds the floor's ceiling.
DigitSeries expand_digits(const FloorElement& target, std::int64_t horizon);

/// The digit series as a general series with ground-floor coefficients.
GeneralSeries to_general(const DigitSeries& s, const Floor& any_floor_of_tower);

/// Horner evaluation at x (v(x) >= 1) in x's floor.
FloorElement evaluate(const GeneralSeries& s, const FloorElement& x);

/// Rescales digits so that a_0 = 1 (divides by the Teichmueller lift of a_0).
DigitSeries normalize_leading_digit(const DigitSeries& s);

/// F_e(X) = F(X^e)^{1/e}, the leading coefficient replaced by its 1-unit e-th
/// root. Throws BadTameDegree unless gcd(e, p n) = 1 and NotOneUnit when the
/// leading coefficient is not a 1-unit.
GeneralSeries eth_root_substitute(const GeneralSeries& s, std::int64_t e);

/// F + X^n E(X): another series taking the same value at a root of E.
GeneralSeries alternate_series(const GeneralSeries& s, const EisensteinPoly& e);

/// F(G(X)) truncated to what both horizons certify.
GeneralSeries compose_series(const GeneralSeries& f, const GeneralSeries& g);

/// Default digit horizon for the extension top/base: the different exponent
/// minus n plus 2, plus nu * v(p) in mixed characteristic, clamped to what the
/// floor's precision supports.
std::int64_t default_horizon(const Floor& top, const Floor& base);

/// Largest horizon the top floor can support for an extension of degree n.
std::int64_t max_horizon(const Floor& top, std::int64_t n);

} // namespace ramify
