#pragma once

// The perturbation series F*(eps) = pi_K^{-1} (F(pi_L + pi_L eps) - pi_K) and
// its valuation function (Newton copolygon).

#include <cstdint>
#include <optional>
#include <vector>

#include "ramify/plfun.hpp"
#include "ramify/series.hpp"

namespace ramify {

/// sum_{i=1}^{I} c_i eps^i over a floor. Each c_i is known modulo
/// pi^certified; coefficients whose valuation reaches `certified` are only
/// lower bounds.
struct EpsilonSeries {
    const Floor* floor = nullptr;
    std::int64_t n = 0;                  // v_L(pi_K)
    std::vector<FloorElement> coeffs;    // coeffs[i - 1] = c_i
    std::int64_t certified = 0;

    [[nodiscard]] std::int64_t order() const { return static_cast<std::int64_t>(coeffs.size()); }
    /// v_L(c_i) when below the certified level, otherwise nullopt.
    [[nodiscard]] std::optional<std::int64_t> valuation(std::int64_t i) const;
};

enum class Norm { VK, VL };

std::string to_string(Norm n);
Norm parse_norm(const std::string& s);

/// Default truncation order p^{nu+1} - 1.
std::int64_t default_truncation_order(const GeneralSeries& f);

/// F*(eps) up to eps^I. Throws PrecisionExhausted.
EpsilonSeries fstar(const GeneralSeries& f, const Floor& floor, std::optional<std::int64_t> order = {});

/// Lower envelope of v(c_i) + i x over 1 <= i <= max_degree (all terms by
/// default); VK divides intercepts and slopes by n. Uncertain terms must be
/// provably irrelevant, else PrecisionExhausted.
PLFunction valuation_function(const EpsilonSeries& es, Norm norm, std::optional<std::int64_t> max_degree = {});

/// The envelope of F*(eps_j): terms of degree >= p^{j+1} discarded, v_L.
PLFunction truncated_psi(const EpsilonSeries& es, int j);

} // namespace ramify
