#pragma once

// Dual-number characterization of phi^j: with F(pi) = pi_K, Phi^j(c) is the
// largest d such that F(pi + u pi^{c+1} eps) == F(pi) modulo pi^{n+d} in
// (O_L / pi^{n+d})[eps] / (eps^N), N = p^{j+1} (FULL) or p^j + 1 (REDUCED).

#include <cstdint>
#include <vector>

#include "ramify/extension.hpp"
#include "ramify/series.hpp"

namespace ramify {

enum class Flavor { Full, Reduced };

std::string to_string(Flavor f);

/// Nilpotency order of eps for level j.
std::int64_t nilpotency(std::uint32_t p, int j, Flavor flavor);

/// B_d[eps] = (floor / pi^{n+d})[eps] / (eps^nilpotency).
class DualRing {
public:
    DualRing(const Floor& floor, std::int64_t n, std::int64_t d, std::int64_t nilpotency);
    static DualRing for_level(const Floor& floor, std::int64_t n, std::int64_t d, int j, Flavor flavor);

    [[nodiscard]] const Floor& floor() const { return *floor_; }
    [[nodiscard]] std::int64_t n() const { return n_; }
    [[nodiscard]] std::int64_t d() const { return d_; }
    [[nodiscard]] std::int64_t nilpotency() const { return nilpotency_; }
    /// Coefficients are reduced modulo pi^(n + d).
    [[nodiscard]] std::int64_t modulus_exponent() const { return n_ + d_; }

    [[nodiscard]] FloorElement reduce(const FloorElement& x) const { return x.truncate(modulus_exponent()); }

private:
    const Floor* floor_;
    std::int64_t n_;
    std::int64_t d_;
    std::int64_t nilpotency_;
};

/// sum_k coeffs[k] eps^k in a DualRing.
class DualElement {
public:
    DualElement(const DualRing& ring, std::vector<FloorElement> coeffs);
    static DualElement constant(const DualRing& ring, const FloorElement& x);

    [[nodiscard]] const DualRing& ring() const { return *ring_; }
    [[nodiscard]] const std::vector<FloorElement>& coeffs() const { return coeffs_; }
    [[nodiscard]] const FloorElement& operator[](std::size_t k) const { return coeffs_[k]; }

    DualElement& operator+=(const DualElement& o);
    friend DualElement operator+(DualElement a, const DualElement& b) { return a += b; }
    friend DualElement operator*(const DualElement& a, const DualElement& b);

private:
    const DualRing* ring_;
    std::vector<FloorElement> coeffs_;
};

/// pi + u pi^{c+1} eps.
DualElement perturbation(const DualRing& ring, std::int64_t c, const FloorElement& u);

/// F evaluated at a dual element by Horner's rule.
DualElement dual_evaluate(const GeneralSeries& f, const DualElement& y);

/// Largest d the floor precision and the series horizon can certify.
std::int64_t certified_co_precision(const GeneralSeries& f, const Floor& floor);

/// Whether F(pi + u pi^{c+1} eps_j) == F(pi) mod pi^{n+d}, by direct dual
/// arithmetic. Throws PrecisionExhausted when d is beyond certification.
bool perturbed_eval(const GeneralSeries& f, const Floor& floor, std::int64_t c, int j, const FloorElement& u,
                    std::int64_t d, Flavor flavor);

/// The same test through the divided series: (D^m F)(pi) (u pi^{c+1})^m in
/// M^{n+d} for 1 <= m < nilpotency.
bool perturbed_eval_dpower(const GeneralSeries& f, const Floor& floor, std::int64_t c, int j, const FloorElement& u,
                           std::int64_t d, Flavor flavor);

/// Largest d for which perturbed_eval holds, searching upward from d = c.
std::int64_t capital_phi(const GeneralSeries& f, const Floor& floor, std::int64_t c, int j, Flavor flavor,
                         const FloorElement& u);
std::int64_t capital_phi(const GeneralSeries& f, const Floor& floor, std::int64_t c, int j, Flavor flavor = Flavor::Full);

/// (D^m F)(X) = sum_k binom(k, m) f_k X^{k-m}.
GeneralSeries dpower(const GeneralSeries& f, std::int64_t m);

/// binom(k, m) as a ground scalar (exact modulo pi_K^N).
BaseScalar binomial_scalar(const BaseField& field, std::int64_t k, std::int64_t m);

} // namespace ramify
