#include "ramify/series.hpp"

#include <algorithm>
#include <numeric>

#include "ramify/errors.hpp"

namespace ramify {

namespace {

using Poly = std::vector<FloorElement>;

// a * b truncated below degree `limit`.
Poly mul_trunc(const Poly& a, const Poly& b, std::size_t limit, const Floor& f) {
    Poly out(std::min(limit, a.size() + b.size() - 1), f.zero());
    for (std::size_t i = 0; i < a.size() && i < out.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size() && i + j < out.size(); ++j) {
            if (b[j].is_zero()) continue;
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

Poly pow_trunc(const Poly& a, std::int64_t e, std::size_t limit, const Floor& f) {
    Poly result{f.one()};
    Poly base = a;
    for (; e > 0; e >>= 1) {
        if (e & 1) result = mul_trunc(result, base, limit, f);
        if (e > 1) base = mul_trunc(base, base, limit, f);
    }
    return result;
}

const Floor& larger_floor(const Floor* a, const Floor* b) {
    if (a->contains(*b)) return *a;
    if (b->contains(*a)) return *b;
    throw ValidationError("series coefficients live in unrelated floors");
}

} // namespace

const Floor& ground_of(const Floor& f) {
    const Floor* g = &f;
    while (!g->is_ground()) g = g->parent();
    return *g;
}

DigitSeries expand_digits(const FloorElement& target, std::int64_t horizon) {
    const Floor& floor = target.floor();
    const std::int64_t n = val(target).value();
    if (n < 1) throw ValidationError("expand_digits: target must have positive valuation");
    if (n + horizon > floor.ceiling())
        throw PrecisionExhausted("digit horizon " + std::to_string(horizon) + " needs valuation " +
                                 std::to_string(n + horizon) + " but the floor ceiling is " +
                                 std::to_string(floor.ceiling()));
    const BaseField& field = floor.field();
    std::vector<BaseScalar> lifts;
    lifts.reserve(field.p());
    for (std::uint32_t r = 0; r < field.p(); ++r) lifts.push_back(teichmuller_lift(field, r));

    DigitSeries out;
    out.p = floor.p();
    out.n = n;
    out.digits.reserve(static_cast<std::size_t>(horizon));
    FloorElement rest = target;
    FloorElement power = floor.uniformizer().pow(static_cast<std::uint64_t>(n));
    for (std::int64_t h = 0; h < horizon; ++h) {
        const std::uint32_t d = rest.leading(n + h);
        if (d != 0) rest -= power.scaled(lifts[d]);
        out.digits.push_back(d);
        power = power.mul_pi();
    }
    if (out.digits.front() == 0) throw TheoremViolation("expand_digits: leading digit vanished");
    return out;
}

GeneralSeries to_general(const DigitSeries& s, const Floor& any_floor_of_tower) {
    const Floor& g = ground_of(any_floor_of_tower);
    GeneralSeries out;
    out.n = s.n;
    out.coefficient_floor = &g;
    std::vector<FloorElement> lifts;
    for (std::uint32_t r = 0; r < g.p(); ++r) lifts.push_back(g.from_scalar(teichmuller_lift(g.field(), r)));
    out.coeffs.reserve(s.digits.size());
    for (auto d : s.digits) out.coeffs.push_back(lifts[d]);
    return out;
}

FloorElement evaluate(const GeneralSeries& s, const FloorElement& x) {
    const Floor& floor = x.floor();
    if (s.coefficient_floor == nullptr || !floor.contains(*s.coefficient_floor))
        throw ValidationError("evaluate: coefficients do not embed into the argument's floor");
    if (x.valuation_or_ceiling() < 1) throw ValidationError("evaluate: argument must have positive valuation");
    FloorElement acc = floor.zero();
    for (auto h = s.coeffs.size(); h-- > 0;) {
        acc = acc * x;
        acc += floor.embed(s.coeffs[h]);
    }
    return acc * x.pow(static_cast<std::uint64_t>(s.n));
}

DigitSeries normalize_leading_digit(const DigitSeries& s) {
    if (s.digits.empty() || s.digits.front() == 0) throw ValidationError("normalize_leading_digit: a_0 must be nonzero");
    // Teichmueller lifts are multiplicative, so dividing by lift(a_0) rescales residues.
    const std::uint64_t inv = residue_inverse(s.digits.front(), s.p);
    DigitSeries out = s;
    for (auto& d : out.digits) d = static_cast<std::uint32_t>(d * inv % s.p);
    return out;
}

GeneralSeries eth_root_substitute(const GeneralSeries& s, std::int64_t e) {
    const Floor& f = *s.coefficient_floor;
    if (e < 1 || std::gcd(e, static_cast<std::int64_t>(f.p()) * s.n) != 1)
        throw BadTameDegree("tame degree " + std::to_string(e) + " is not prime to p*n = " +
                            std::to_string(static_cast<std::int64_t>(f.p()) * s.n));
    if (s.coeffs.empty()) throw ValidationError("eth_root_substitute: empty series");
    const FloorElement& a0 = s.coeffs.front();
    if (a0.residue() != 1) throw NotOneUnit("leading coefficient " + a0.str() + " is not a 1-unit");
    if (e == 1) return s;

    const FloorElement e_elem = f.from_int(e);
    // 1-unit root of a_0 by Newton iteration from 1.
    FloorElement root = f.one();
    for (std::int64_t correct = 1; correct < 2 * f.ceiling(); correct *= 2)
        root -= (root.pow(static_cast<std::uint64_t>(e)) - a0) * unit_inverse(e_elem * root.pow(static_cast<std::uint64_t>(e - 1)));
    if (!(root.pow(static_cast<std::uint64_t>(e)) == a0)) throw TheoremViolation("e-th root iteration did not converge");

    // Solve g^e = h coefficientwise: e g_0^{e-1} g_k = h_k - [g^e]_k|_{g_k = 0}.
    const std::size_t H = s.coeffs.size();
    const FloorElement denom_inv = unit_inverse(e_elem * root.pow(static_cast<std::uint64_t>(e - 1)));
    Poly g{root};
    for (std::size_t k = 1; k < H; ++k) {
        g.push_back(f.zero());
        const Poly pw = pow_trunc(g, e, k + 1, f);
        const FloorElement rest = k < pw.size() ? pw[k] : f.zero();
        g[k] = (s.coeffs[k] - rest) * denom_inv;
    }

    GeneralSeries out;
    out.n = s.n;
    out.coefficient_floor = s.coefficient_floor;
    out.coeffs.assign(H * static_cast<std::size_t>(e), f.zero());
    for (std::size_t k = 0; k < H; ++k) out.coeffs[k * static_cast<std::size_t>(e)] = g[k];
    return out;
}

GeneralSeries alternate_series(const GeneralSeries& s, const EisensteinPoly& e) {
    const int deg = e.degree();
    if (deg < 1) throw ValidationError("alternate_series: empty Eisenstein polynomial");
    if (s.horizon() <= deg)
        throw PrecisionExhausted("alternate_series: horizon " + std::to_string(s.horizon()) +
                                 " too short for a degree-" + std::to_string(deg) + " perturbation");
    const Floor& f = larger_floor(s.coefficient_floor, e.coefficients.front().floor_ptr());
    GeneralSeries out;
    out.n = s.n;
    out.coefficient_floor = &f;
    out.coeffs.reserve(s.coeffs.size());
    for (const auto& c : s.coeffs) out.coeffs.push_back(f.embed(c));
    for (int h = 0; h < deg; ++h) out.coeffs[static_cast<std::size_t>(h)] += f.embed(e.coefficients[static_cast<std::size_t>(h)]);
    out.coeffs[static_cast<std::size_t>(deg)] += f.one();
    return out;
}

GeneralSeries compose_series(const GeneralSeries& f, const GeneralSeries& g) {
    const Floor& fl = larger_floor(f.coefficient_floor, g.coefficient_floor);
    const std::int64_t nm = f.n * g.n;
    const std::int64_t horizon = std::min(g.horizon(), g.n * f.horizon());
    const auto limit = static_cast<std::size_t>(nm + horizon);

    Poly gp(static_cast<std::size_t>(g.n + g.horizon()), fl.zero());
    for (std::size_t h = 0; h < g.coeffs.size(); ++h) gp[static_cast<std::size_t>(g.n) + h] = fl.embed(g.coeffs[h]);

    Poly acc(limit, fl.zero());
    Poly power = pow_trunc(gp, f.n, limit, fl);
    for (std::size_t h = 0; h < f.coeffs.size(); ++h) {
        if (static_cast<std::int64_t>(h) > 0) power = mul_trunc(power, gp, limit, fl);
        const FloorElement c = fl.embed(f.coeffs[h]);
        if (c.is_zero()) continue;
        for (std::size_t k = 0; k < power.size(); ++k) acc[k] += c * power[k];
    }
    GeneralSeries out;
    out.n = nm;
    out.coefficient_floor = &fl;
    out.coeffs.assign(acc.begin() + nm, acc.end());
    return out;
}

std::int64_t max_horizon(const Floor& top, std::int64_t n) { return top.ceiling() - n; }

std::int64_t default_horizon(const Floor& top, const Floor& base) {
    const std::int64_t n = top.degree_over(base);
    const std::int64_t diff = relative_different(top, base);
    const int nu = vp(n, top.p());
    std::int64_t h = diff - n + 2;
    const ExtNat vlp = p_valuation(top);
    if (vlp.is_finite()) h += nu * vlp.value();
    return std::clamp<std::int64_t>(h, 1, std::max<std::int64_t>(1, max_horizon(top, n)));
}

} // namespace ramify
