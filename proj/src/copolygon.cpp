#include "ramify/copolygon.hpp"

#include <algorithm>

#include "ramify/errors.hpp"
#include "ramify/oracle.hpp"

namespace ramify {

std::optional<std::int64_t> EpsilonSeries::valuation(std::int64_t i) const {
    if (i < 1 || i > order()) throw ValidationError("epsilon degree out of range");
    const std::int64_t v = coeffs[static_cast<std::size_t>(i - 1)].valuation_or_ceiling();
    if (v >= certified) return std::nullopt;
    return v;
}

std::string to_string(Norm n) { return n == Norm::VK ? "vK" : "vL"; }

Norm parse_norm(const std::string& s) {
    if (s == "vK" || s == "VK") return Norm::VK;
    if (s == "vL" || s == "VL") return Norm::VL;
    throw ValidationError("unknown normalization '" + s + "' (expected vK or vL)");
}

std::int64_t default_truncation_order(const GeneralSeries& f) {
    const std::uint32_t p = f.coefficient_floor->p();
    return nilpotency(p, vp(f.n, p), Flavor::Full) - 1;
}

EpsilonSeries fstar(const GeneralSeries& f, const Floor& floor, std::optional<std::int64_t> order) {
    const std::int64_t I = order ? *order : default_truncation_order(f);
    if (I < 1) throw ValidationError("truncation order must be positive");
    const std::int64_t cap = certified_co_precision(f, floor);
    if (cap < 1) throw PrecisionExhausted("no certified precision beyond v(pi_K)");
    const DualRing ring(floor, f.n, cap, I + 1);
    const FloorElement pi = floor.uniformizer();
    const DualElement y(ring, {pi, pi});
    const DualElement value = dual_evaluate(f, y);

    const FloorElement base = value[0];
    if (base.valuation_or_ceiling() != f.n) throw ValidationError("F(pi_L) does not have valuation n");
    const FloorElement inv = unit_inverse(udiv(base, f.n));

    EpsilonSeries out;
    out.floor = &floor;
    out.n = f.n;
    out.certified = cap;
    for (std::int64_t i = 1; i <= I; ++i) {
        const FloorElement& ci = value[static_cast<std::size_t>(i)];
        if (ci.valuation_or_ceiling() < f.n) throw TheoremViolation("epsilon coefficient not divisible by pi_K");
        // udiv leaves the top n levels untracked; the product keeps them below pi^cap.
        out.coeffs.push_back((udiv(ci, f.n) * inv).truncate(cap));
    }
    return out;
}

PLFunction valuation_function(const EpsilonSeries& es, Norm norm, std::optional<std::int64_t> max_degree) {
    const std::int64_t top = std::min(es.order(), max_degree ? *max_degree : es.order());
    const Rational scale = norm == Norm::VK ? Rational(1, es.n) : Rational(1);
    std::vector<Line> certain;
    std::vector<Line> uncertain;
    for (std::int64_t i = 1; i <= top; ++i) {
        const auto v = es.valuation(i);
        if (v) certain.push_back({Rational(*v) * scale, Rational(i) * scale});
        else uncertain.push_back({Rational(es.certified) * scale, Rational(i) * scale});
    }
    if (certain.empty())
        throw PrecisionExhausted("no epsilon coefficient has a certified valuation below " + std::to_string(es.certified));
    PLFunction env(std::move(certain));
    for (const auto& l : uncertain)
        if (!dominates(l, env))
            throw PrecisionExhausted("an uncertified epsilon coefficient may touch the copolygon; raise precision");
    return env;
}

PLFunction truncated_psi(const EpsilonSeries& es, int j) {
    const std::int64_t nu = vp(es.n, es.floor->p());
    if (j < 0 || j > nu) throw ValidationError("truncated_psi: j out of range");
    const std::int64_t bound = nilpotency(es.floor->p(), j, Flavor::Full) - 1;
    if (bound > es.order()) throw ValidationError("epsilon series truncated below degree " + std::to_string(bound));
    return valuation_function(es, Norm::VL, bound);
}

} // namespace ramify
