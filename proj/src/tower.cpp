#include "ramify/tower.hpp"

#include <algorithm>
#include <numeric>

#include "ramify/errors.hpp"
#include "ramify/oracle.hpp"

namespace ramify {

namespace {

std::int64_t ipow(std::int64_t b, int e) {
    std::int64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

} // namespace

TowerProfile compose_tower(const std::shared_ptr<const Floor>& top, const TowerHorizons& horizons) {
    if (!top || top->level() != 2) throw ValidationError("compose_tower expects a floor two steps above the ground");
    TowerProfile t;
    t.top = top;
    t.middle = top->parent();
    t.base = t.middle->parent();
    t.lower = analyze_extension(*t.middle, *t.base, horizons.lower);
    t.upper = analyze_extension(*top, *t.middle, horizons.upper);
    t.composed = analyze_extension(*top, *t.base, horizons.composed);
    if (t.composed.profile.nu != t.levels()) throw TheoremViolation("v_p(nm) != nu + mu");

    t.h = compose_series(to_general(t.lower.digits, *t.middle), to_general(t.upper.digits, *top));
    const FloorElement lhs = evaluate(t.h, top->uniformizer());
    const FloorElement rhs = top->embed(t.base->uniformizer());
    const std::int64_t k = std::min(t.h.n + t.h.horizon(), top->ceiling());
    if (!(lhs - rhs).truncate(k).is_zero()) throw TheoremViolation("H(pi_M) != pi_K");
    return t;
}

std::vector<Pair> omega(const TowerProfile& t, int l) {
    std::vector<Pair> out;
    for (int j = 0; j <= t.nu(); ++j) {
        const int k = l - j;
        if (k >= 0 && k <= t.mu()) out.emplace_back(j, k);
    }
    return out;
}

Line pair_line(const TowerProfile& t, const Pair& jk) {
    const auto [j, k] = jk;
    const std::int64_t p = t.lower.profile.p;
    const std::int64_t b = t.m() * t.lower.profile.i[static_cast<std::size_t>(j)] +
                           ipow(p, j) * t.upper.profile.i[static_cast<std::size_t>(k)];
    return {Rational(b), Rational(ipow(p, j + k))};
}

PLFunction lambda_l(const TowerProfile& t, int l) {
    if (l < 0 || l > t.levels()) throw ValidationError("l out of range 0.." + std::to_string(t.levels()));
    std::vector<Line> envelopes;
    for (const auto& [j, k] : omega(t, l)) {
        const PLFunction f = compose(scale(phi(t.lower.profile, j), t.m()), phi(t.upper.profile, k));
        envelopes.insert(envelopes.end(), f.lines().begin(), f.lines().end());
    }
    PLFunction first(std::move(envelopes));

    std::vector<Line> lines;
    for (int l0 = 0; l0 <= l; ++l0)
        for (const auto& jk : omega(t, l0)) lines.push_back(pair_line(t, jk));
    const PLFunction second(std::move(lines));
    if (!(first == second)) throw TheoremViolation("the two forms of lambda^" + std::to_string(l) + " disagree");
    return first;
}

std::map<int, std::vector<Pair>> s_sets(const TowerProfile& t, int l, const Rational& x) {
    const Rational target = lambda_l(t, l)(x);
    std::map<int, std::vector<Pair>> out;
    for (int a = 0; a <= l; ++a) {
        auto& s = out[a];
        for (const auto& jk : omega(t, a))
            if (pair_line(t, jk)(x) == target) s.push_back(jk);
    }
    return out;
}

GeReport ge_report(const TowerProfile& t, int l, const Rational& x) {
    if (x < 0) throw ValidationError("x must be nonnegative");
    GeReport r;
    r.l = l;
    r.x = x;
    r.lambda = lambda_l(t, l)(x);
    r.phi = phi(t.composed.profile, l)(x);
    r.s = s_sets(t, l, x);
    bool all_empty_below = true;
    for (const auto& [a, s] : r.s) {
        if (s.size() == 1) {
            r.hypothesis = true;
            if (all_empty_below) r.in_t_l = true;
        }
        if (!s.empty()) all_empty_below = false;
    }
    r.equality = r.phi == r.lambda;
    const std::string where = " at l = " + std::to_string(l) + ", x = " + to_string(x);
    if (r.phi < r.lambda) throw TheoremViolation("phi^l < lambda^l" + where);
    if (r.hypothesis && !r.equality) throw TheoremViolation("unique tie but phi^l != lambda^l" + where);
    return r;
}

nlohmann::json to_json(const GeReport& r) {
    nlohmann::json s = nlohmann::json::object();
    for (const auto& [a, pairs] : r.s) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& [j, k] : pairs) arr.push_back({j, k});
        s[std::to_string(a)] = arr;
    }
    return {{"l", r.l},
            {"x", rational_json(r.x)},
            {"lambda", rational_json(r.lambda)},
            {"phi", rational_json(r.phi)},
            {"S", s},
            {"hypothesis", r.hypothesis},
            {"equality", r.equality},
            {"in_T_l", r.in_t_l}};
}

std::string to_string(Relation r) {
    switch (r) {
    case Relation::Less: return "<";
    case Relation::Equal: return "=";
    case Relation::Greater: return ">";
    }
    return "?";
}

CorollaryReport corollary_report(const TowerProfile& t, int l) {
    const GeReport ge = ge_report(t, l, 0);
    CorollaryReport r;
    r.l = l;
    r.bound = boost::rational_cast<std::int64_t>(ge.lambda);
    r.index = t.composed.profile.i[static_cast<std::size_t>(l)];
    r.relation = r.index < r.bound ? Relation::Less : r.index == r.bound ? Relation::Equal : Relation::Greater;
    r.unique_minimizer = ge.hypothesis;
    return r;
}

nlohmann::json to_json(const CorollaryReport& r) {
    return {{"l", r.l},
            {"bound", r.bound},
            {"index", r.index},
            {"relation", to_string(r.relation)},
            {"unique_minimizer", r.unique_minimizer}};
}

std::vector<Rational> sample_grid(const TowerProfile& t, int l) {
    std::vector<Rational> xs{0, {1, 3}, {1, 2}, 1, {3, 2}, 2, 3, 5};
    for (const auto& v : lambda_l(t, l).vertices()) xs.push_back(v.x);
    for (const auto& v : phi(t.composed.profile, l).vertices()) xs.push_back(v.x);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

TameLift tame_lift_tower(const std::shared_ptr<const Floor>& top, const Floor& base, std::int64_t e,
                         std::optional<std::int64_t> horizon) {
    if (!top) throw ValidationError("tame_lift_tower: null floor");
    const ExtensionAnalysis an = analyze_extension(*top, base, horizon);
    if (e < 1 || std::gcd(e, static_cast<std::int64_t>(top->p()) * an.digits.n) != 1)
        throw BadTameDegree("e = " + std::to_string(e) + " is not prime to p n = " +
                            std::to_string(static_cast<std::int64_t>(top->p()) * an.digits.n));
    const GeneralSeries g = to_general(normalize_leading_digit(an.digits), *top);
    TameLift out;
    out.e = e;
    out.nu = an.profile.nu;
    if (e == 1) {
        out.floor = top;
        out.series = g;
        return out;
    }
    EisensteinPoly poly;
    poly.coefficients.assign(static_cast<std::size_t>(e), top->zero());
    poly.coefficients[0] = -top->uniformizer();
    out.floor = attach_eisenstein(top, std::move(poly));
    out.series = eth_root_substitute(g, e);
    return out;
}

std::vector<std::int64_t> lifted_indices(const TameLift& lift) {
    std::vector<std::int64_t> out;
    for (int j = 0; j <= lift.nu; ++j) out.push_back(capital_phi(lift.series, *lift.floor, 0, j, Flavor::Full));
    return out;
}

} // namespace ramify
