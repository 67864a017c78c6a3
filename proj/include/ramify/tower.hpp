#pragma once

// Two-step towers M/L/K: the composed profile, the bound functions lambda^l,
// tie-sets S_l^a, the lower-bound/equality theorem and tame base change.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ramify/invariants.hpp"
#include "ramify/plfun.hpp"

namespace ramify {

struct TowerHorizons {
    std::optional<std::int64_t> lower;
    std::optional<std::int64_t> upper;
    std::optional<std::int64_t> composed;
};

struct TowerProfile {
    std::shared_ptr<const Floor> top;  // M
    const Floor* middle = nullptr;     // L
    const Floor* base = nullptr;       // K
    ExtensionAnalysis lower;           // L/K: n, nu, i_j
    ExtensionAnalysis upper;           // M/L: m, mu, i'_k
    ExtensionAnalysis composed;        // M/K: nm, nu + mu, i''_l
    GeneralSeries h;                   // F(G(X)), H(pi_M) = pi_K

    [[nodiscard]] std::int64_t n() const { return lower.profile.n; }
    [[nodiscard]] std::int64_t m() const { return upper.profile.n; }
    [[nodiscard]] int nu() const { return lower.profile.nu; }
    [[nodiscard]] int mu() const { return upper.profile.nu; }
    [[nodiscard]] int levels() const { return nu() + mu(); }
};

/// Resolves L/K, M/L and M/K for the floor M (two Eisenstein steps above the
/// ground), forms H = F o G and spot-checks H(pi_M) = pi_K.
TowerProfile compose_tower(const std::shared_ptr<const Floor>& top, const TowerHorizons& horizons = {});

using Pair = std::pair<int, int>;

/// Omega_l = {(j, k) : j <= nu, k <= mu, j + k = l}.
std::vector<Pair> omega(const TowerProfile& t, int l);

/// m i_j + p^j i'_k + p^{j+k} x.
Line pair_line(const TowerProfile& t, const Pair& jk);

/// min over Omega_l of phi^{j,m}(phi'^k(x)); checked against the
/// line-by-line form over Omega_{l0}, l0 <= l.
PLFunction lambda_l(const TowerProfile& t, int l);

/// a -> S_l^a(x) for 0 <= a <= l.
std::map<int, std::vector<Pair>> s_sets(const TowerProfile& t, int l, const Rational& x);

struct GeReport {
    int l = 0;
    Rational x;
    Rational lambda;
    Rational phi;
    std::map<int, std::vector<Pair>> s;
    bool hypothesis = false;
    bool in_t_l = false;
    bool equality = false;
};

/// Evaluates both sides of the theorem at (l, x). Throws TheoremViolation if
/// phi < lambda, or if the hypothesis holds without equality.
GeReport ge_report(const TowerProfile& t, int l, const Rational& x);

nlohmann::json to_json(const GeReport& r);

enum class Relation { Less, Equal, Greater };
std::string to_string(Relation r);

struct CorollaryReport {
    int l = 0;
    std::int64_t bound = 0;        // lambda^l(0)
    std::int64_t index = 0;        // i''_l
    Relation relation = Relation::Equal;  // of i''_l against the bound
    bool unique_minimizer = false;  // some Omega_{l0} has exactly one minimizing pair
};

CorollaryReport corollary_report(const TowerProfile& t, int l);

nlohmann::json to_json(const CorollaryReport& r);

/// {0, 1/3, 1/2, 1, 3/2, 2, 3, 5} plus the vertex abscissas of lambda^l and of
/// the composed phi^l, sorted.
std::vector<Rational> sample_grid(const TowerProfile& t, int l);

struct TameLift {
    std::shared_ptr<const Floor> floor;  // L_e: Y^e = pi_L
    GeneralSeries series;                // F_e with F_e(pi_{L_e}) = pi_{K_e}
    std::int64_t e = 1;
    int nu = 0;
};

/// Adjoins an e-th root of pi_L and builds F_e(X) = F(X^e)^{1/e} from the
/// normalized digit series of top/base. Throws BadTameDegree.
TameLift tame_lift_tower(const std::shared_ptr<const Floor>& top, const Floor& base, std::int64_t e,
                         std::optional<std::int64_t> horizon = {});

/// Phi^j(0) of F_e over L_e for 0 <= j <= nu, the indices of L_e/K_e.
std::vector<std::int64_t> lifted_indices(const TameLift& lift);

} // namespace ramify
