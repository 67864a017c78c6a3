#include "ramify/invariants.hpp"

#include <algorithm>

#include "ramify/errors.hpp"

namespace ramify {

namespace {

std::int64_t ipow(std::int64_t b, int e) {
    std::int64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

// v_p(k!) by Legendre's formula.
std::int64_t vp_factorial(std::int64_t k, std::int64_t p) {
    std::int64_t v = 0;
    for (std::int64_t q = k / p; q > 0; q /= p) v += q;
    return v;
}

bool is_p_power(std::int64_t c, std::int64_t p) {
    while (c % p == 0) c /= p;
    return c == 1;
}

} // namespace

TildeIndices tilde_indices(const DigitSeries& s, int nu) {
    TildeIndices out;
    out.horizon = s.horizon();
    out.values.assign(static_cast<std::size_t>(nu + 1), ExtNat::infinity());
    for (std::int64_t h = 0; h < s.horizon(); ++h) {
        if (s.digits[static_cast<std::size_t>(h)] == 0) continue;
        const int v = vp(h + s.n, s.p);
        for (int j = std::max(v, 0); j <= nu; ++j) {
            auto& t = out.values[static_cast<std::size_t>(j)];
            if (t.is_infinite()) t = h;
        }
    }
    return out;
}

std::vector<ExtNat> closed_form_indices(const std::vector<ExtNat>& tilde, ExtNat vLp) {
    const int nu = static_cast<int>(tilde.size()) - 1;
    std::vector<ExtNat> out(tilde.size(), ExtNat::infinity());
    for (int j = 0; j <= nu; ++j)
        for (int j1 = j; j1 <= nu; ++j1)
            out[static_cast<std::size_t>(j)] =
                min(out[static_cast<std::size_t>(j)], tilde[static_cast<std::size_t>(j1)] + (j1 - j) * vLp);
    return out;
}

std::vector<std::int64_t> indices(const TildeIndices& tilde, ExtNat vLp) {
    const int nu = static_cast<int>(tilde.values.size()) - 1;
    if (nu < 0) throw ValidationError("indices: empty tilde vector");
    if (tilde.values.back() != ExtNat(0))
        throw IndexUnresolved("tilde-i_nu is " + tilde.values.back().str() + ", expected 0 (leading digit missing)");
    std::vector<std::int64_t> out(static_cast<std::size_t>(nu + 1), 0);
    for (int j = nu - 1; j >= 0; --j) {
        const ExtNat cand = min(tilde.values[static_cast<std::size_t>(j)], ExtNat(out[static_cast<std::size_t>(j + 1)]) + vLp);
        // Digits at h >= horizon could still produce a smaller tilde-i_j.
        if (cand.is_infinite() || cand.value() >= tilde.horizon)
            throw IndexUnresolved("i_" + std::to_string(j) + " is not certified below the digit horizon " +
                                  std::to_string(tilde.horizon) + " (candidate " + cand.str() + ")");
        out[static_cast<std::size_t>(j)] = cand.value();
    }
    return out;
}

InsepProfile resolve_profile(const DigitSeries& s, ExtNat vLp) {
    InsepProfile prof;
    prof.p = s.p;
    prof.n = s.n;
    prof.nu = vp(s.n, s.p);
    prof.a = s.n / ipow(s.p, prof.nu);
    prof.vLp = vLp;
    prof.horizon = s.horizon();
    const TildeIndices t = tilde_indices(s, prof.nu);
    prof.tilde = t.values;
    prof.i = indices(t, vLp);
    return prof;
}

void check_chain(const InsepProfile& prof) {
    const int nu = prof.nu;
    const auto& i = prof.i;
    if (static_cast<int>(i.size()) != nu + 1) throw TheoremViolation("profile has wrong length");
    if (i[static_cast<std::size_t>(nu)] != 0) throw TheoremViolation("i_nu != 0");
    if (nu >= 1 && i[static_cast<std::size_t>(nu - 1)] < 1) throw TheoremViolation("i_{nu-1} < 1");
    for (int j = 0; j < nu; ++j) {
        if (i[static_cast<std::size_t>(j + 1)] > i[static_cast<std::size_t>(j)])
            throw TheoremViolation("indices not nonincreasing at j = " + std::to_string(j));
        if (ExtNat(i[static_cast<std::size_t>(j)]) > ExtNat(i[static_cast<std::size_t>(j + 1)]) + prof.vLp)
            throw TheoremViolation("i_j > i_{j+1} + v_L(p) at j = " + std::to_string(j));
    }
    const auto closed = closed_form_indices(prof.tilde, prof.vLp);
    for (int j = 0; j <= nu; ++j)
        if (closed[static_cast<std::size_t>(j)] != ExtNat(i[static_cast<std::size_t>(j)]))
            throw TheoremViolation("closed form disagrees with recursion at j = " + std::to_string(j));
}

Line phi_tilde(const InsepProfile& prof, int j) {
    if (j < 0 || j > prof.nu) throw ValidationError("phi_tilde: j out of range");
    return {Rational(prof.i[static_cast<std::size_t>(j)]), Rational(ipow(prof.p, j))};
}

PLFunction phi(const InsepProfile& prof, int j) {
    if (j < 0 || j > prof.nu) throw ValidationError("phi: j = " + std::to_string(j) + " out of range 0.." + std::to_string(prof.nu));
    std::vector<Line> lines;
    for (int j0 = 0; j0 <= j; ++j0) lines.push_back(phi_tilde(prof, j0));
    return PLFunction(std::move(lines));
}

BinomVal binom_val(std::int64_t b, std::int64_t c, std::uint32_t p) {
    if (c < 1 || b < c) throw ValidationError("binom_val requires b >= c >= 1");
    BinomVal out;
    out.value = static_cast<int>(vp_factorial(b, p) - vp_factorial(c, p) - vp_factorial(b - c, p));
    const int vb = vp(b, p);
    const int vc = vp(c, p);
    out.lower_bound = vb - vc;
    if (out.value < out.lower_bound) throw TheoremViolation("v_p(binom(b,c)) below v_p(b) - v_p(c)");
    out.equality = vb >= vc && is_p_power(c, p);
    if (out.equality && out.value != out.lower_bound)
        throw TheoremViolation("v_p(binom(b,c)) != v_p(b) - v_p(c) for a p-power c");
    return out;
}

Rational phi_binomial(const DigitSeries& s, ExtNat vLp, int j, const Rational& x) {
    const int nu = vp(s.n, s.p);
    if (j < 0 || j > nu) throw ValidationError("phi_binomial: j out of range");
    std::optional<Rational> best;
    for (std::int64_t h = 0; h < s.horizon(); ++h) {
        if (s.digits[static_cast<std::size_t>(h)] == 0) continue;
        for (int j0 = 0; j0 <= j; ++j0) {
            const std::int64_t pj = ipow(s.p, j0);
            const ExtNat vl = std::int64_t{binom_val(h + s.n, pj, s.p).value} * vLp;
            if (vl.is_infinite()) continue;
            const Rational term = Rational(h + vl.value()) + Rational(pj) * x;
            if (!best || term < *best) best = term;
        }
    }
    // Unseen digits contribute at least horizon + x.
    if (!best || *best > Rational(s.horizon()) + x)
        throw IndexUnresolved("phi_binomial not certified within the digit horizon");
    return *best;
}

ExtensionAnalysis analyze_extension(const Floor& top, const Floor& base, std::optional<std::int64_t> horizon) {
    if (&top == &base || !top.contains(base)) throw ValidationError("analyze_extension: base must be a proper subfloor");
    ExtensionAnalysis out;
    out.top = &top;
    out.base = &base;
    const std::int64_t h = horizon ? *horizon : default_horizon(top, base);
    const FloorElement target = top.embed(base.uniformizer());
    out.digits = expand_digits(target, h);
    if (out.digits.n != top.degree_over(base)) throw TheoremViolation("v_top(pi_base) != [top : base]");
    out.profile = resolve_profile(out.digits, p_valuation(top));
    return out;
}

} // namespace ramify
