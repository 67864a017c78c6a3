#pragma once

#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ramify/extension.hpp"
#include "ramify/errors.hpp"
#include "ramify/invariants.hpp"
#include "ramify/tower.hpp"

namespace fixtures {

using namespace ramify;

struct Ext {
    std::string name;
    std::shared_ptr<const Floor> ground;
    std::shared_ptr<const Floor> top;
};

// E(X) = X^n + sum c_i X^i with ground coefficients given as (digit, power) terms.
inline Ext eisenstein(const std::string& name, const BaseField& field,
                      const std::vector<std::vector<std::pair<std::int64_t, int>>>& coeffs) {
    auto K = Floor::ground(field);
    EisensteinPoly e;
    for (const auto& c : coeffs) e.coefficients.push_back(K->from_scalar(field.from_terms(c)));
    return {name, K, attach_eisenstein(K, e)};
}

// (F_2((t)), X^2 + tX + t)
inline Ext example_a(int precision = 40) {
    return eisenstein("F2((t)) X^2+tX+t", BaseField::equal(2, precision), {{{1, 1}}, {{1, 1}}});
}

// (F_3((t)), X^3 + tX + t)
inline Ext example_f3(int precision = 40) {
    return eisenstein("F3((t)) X^3+tX+t", BaseField::equal(3, precision), {{{1, 1}}, {{1, 1}}, {}});
}

// (Q_2, X^2 - 2)
inline Ext q2_sqrt2(int precision = 40) { return eisenstein("Q2 X^2-2", BaseField::mixed(2, precision), {{{-1, 1}}, {}}); }

// (Q_2, X^2 + 2X + 2)
inline Ext q2_x2_2x_2(int precision = 40) {
    return eisenstein("Q2 X^2+2X+2", BaseField::mixed(2, precision), {{{1, 1}}, {{1, 1}}});
}

// (Q_3, X^3 - 3)
inline Ext q3_cbrt3(int precision = 30) { return eisenstein("Q3 X^3-3", BaseField::mixed(3, precision), {{{-1, 1}}, {}, {}}); }

inline std::vector<Ext> all(int precision = 0) {
    if (precision > 0) return {example_a(precision), example_f3(precision), q2_sqrt2(precision), q2_x2_2x_2(precision),
                               q3_cbrt3(std::min(precision, 30))};
    return {example_a(), example_f3(), q2_sqrt2(), q2_x2_2x_2(), q3_cbrt3()};
}

// M = L(rho), rho^2 + pi rho + pi = 0, over Example A.
inline std::shared_ptr<const Floor> example_d(int precision = 40) {
    const Ext a = example_a(precision);
    const FloorElement pi = a.top->uniformizer();
    return attach_eisenstein(a.top, EisensteinPoly{{pi, pi}});
}

// Horizon large enough for the oracle to certify Phi^j(c) for c <= cmax.
inline std::int64_t sweep_horizon(const Floor& top, const Floor& base, std::int64_t cmax) {
    const ExtensionAnalysis an = analyze_extension(top, base);
    return std::min(max_horizon(top, an.digits.n), an.profile.i.front() + cmax + 2);
}

// pi^v times a random unit with Teichmueller leading digit.
inline FloorElement random_with_valuation(const Floor& f, std::int64_t v, std::mt19937_64& rng) {
    const FloorElement pi = f.uniformizer();
    FloorElement u = f.from_int(1 + static_cast<std::int64_t>(rng() % (f.p() - 1)));
    for (int k = 1; k <= 3; ++k) u += f.from_int(static_cast<std::int64_t>(rng() % f.p())) * pi.pow(static_cast<std::uint64_t>(k));
    return u * pi.pow(static_cast<std::uint64_t>(v));
}

// A random Eisenstein polynomial of degree n over f: v(c_0) = 1, other
// coefficients zero or of valuation 1..3.
inline EisensteinPoly random_eisenstein(const Floor& f, int n, std::mt19937_64& rng) {
    EisensteinPoly e;
    e.coefficients.push_back(random_with_valuation(f, 1, rng));
    for (int i = 1; i < n; ++i) {
        if (rng() % 3 == 0) e.coefficients.push_back(f.zero());
        else e.coefficients.push_back(random_with_valuation(f, 1 + static_cast<std::int64_t>(rng() % 3), rng));
    }
    return e;
}

struct RandomTower {
    std::string description;
    std::shared_ptr<const Floor> top;
    TowerProfile profile;
};

// Draws separable towers until one resolves; p in {2, 3}, n, m in {p, 2p, p^2 (p = 2)}.
inline RandomTower random_tower(std::mt19937_64& rng, Mode mode) {
    for (;;) {
        const std::uint32_t p = rng() % 2 == 0 ? 2 : 3;
        const std::vector<int> degrees = p == 2 ? std::vector<int>{2, 4} : std::vector<int>{3, 6};
        const int n = degrees[rng() % degrees.size()];
        const int m = degrees[rng() % degrees.size()];
        const int precision = mode == Mode::Equal ? 24 : (p == 2 ? 24 : 16);
        const BaseField field(mode, p, precision);
        auto K = Floor::ground(field);
        try {
            auto L = attach_eisenstein(K, random_eisenstein(*K, n, rng));
            auto M = attach_eisenstein(L, random_eisenstein(*L, m, rng));
            (void)different_exponent(*L);
            (void)different_exponent(*M);
            std::optional<TowerProfile> prof;
            try {
                prof = compose_tower(M);
            } catch (const IndexUnresolved&) {
                prof = compose_tower(M, {max_horizon(*L, n), max_horizon(*M, m), max_horizon(*M, n * m)});
            }
            const std::string desc = std::string(mode == Mode::Equal ? "equal" : "mixed") + " p=" + std::to_string(p) +
                                     " n=" + std::to_string(n) + " m=" + std::to_string(m);
            return {desc, M, *prof};
        } catch (const PrecisionExhausted&) {
            continue;  // inseparable or beyond precision
        } catch (const IndexUnresolved&) {
            continue;
        }
    }
}

} // namespace fixtures
