#include "ramify/oracle.hpp"

#include <algorithm>

#include "ramify/errors.hpp"

namespace ramify {

std::string to_string(Flavor f) { return f == Flavor::Full ? "full" : "reduced"; }

std::int64_t nilpotency(std::uint32_t p, int j, Flavor flavor) {
    std::int64_t pj = 1;
    for (int i = 0; i < j; ++i) pj *= p;
    return flavor == Flavor::Full ? pj * p : pj + 1;
}

DualRing::DualRing(const Floor& floor, std::int64_t n, std::int64_t d, std::int64_t nilpotency)
    : floor_(&floor), n_(n), d_(d), nilpotency_(nilpotency) {
    if (nilpotency < 1) throw ValidationError("nilpotency order must be positive");
    if (d < 0) throw ValidationError("co-precision d must be nonnegative");
    if (n + d > floor.ceiling())
        throw PrecisionExhausted("dual ring modulus pi^" + std::to_string(n + d) + " exceeds the floor ceiling " +
                                 std::to_string(floor.ceiling()));
}

DualRing DualRing::for_level(const Floor& floor, std::int64_t n, std::int64_t d, int j, Flavor flavor) {
    return {floor, n, d, ramify::nilpotency(floor.p(), j, flavor)};
}

DualElement::DualElement(const DualRing& ring, std::vector<FloorElement> coeffs) : ring_(&ring), coeffs_(std::move(coeffs)) {
    coeffs_.resize(static_cast<std::size_t>(ring.nilpotency()), ring.floor().zero());
    for (auto& c : coeffs_) c = ring.reduce(c);
}

DualElement DualElement::constant(const DualRing& ring, const FloorElement& x) { return {ring, {ring.floor().embed(x)}}; }

DualElement& DualElement::operator+=(const DualElement& o) {
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    return *this;
}

DualElement operator*(const DualElement& a, const DualElement& b) {
    const DualRing& ring = *a.ring_;
    const std::size_t N = a.coeffs_.size();
    std::vector<FloorElement> out(N, ring.floor().zero());
    for (std::size_t i = 0; i < N; ++i) {
        if (a.coeffs_[i].is_zero()) continue;
        for (std::size_t j = 0; i + j < N; ++j) {
            if (b.coeffs_[j].is_zero()) continue;
            out[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    return {ring, std::move(out)};
}

DualElement perturbation(const DualRing& ring, std::int64_t c, const FloorElement& u) {
    const Floor& f = ring.floor();
    const FloorElement pi = f.uniformizer();
    std::vector<FloorElement> coeffs{pi};
    if (ring.nilpotency() > 1) coeffs.push_back(f.embed(u) * pi.pow(static_cast<std::uint64_t>(c + 1)));
    return {ring, std::move(coeffs)};
}

DualElement dual_evaluate(const GeneralSeries& f, const DualElement& y) {
    const DualRing& ring = y.ring();
    const Floor& floor = ring.floor();
    DualElement acc = DualElement::constant(ring, floor.zero());
    for (auto h = f.coeffs.size(); h-- > 0;) {
        acc = acc * y;
        acc += DualElement::constant(ring, floor.embed(f.coeffs[h]));
    }
    DualElement yn = DualElement::constant(ring, floor.one());
    DualElement base = y;
    for (auto e = static_cast<std::uint64_t>(f.n); e > 0; e >>= 1) {
        if (e & 1U) yn = yn * base;
        if (e > 1) base = base * base;
    }
    return acc * yn;
}

std::int64_t certified_co_precision(const GeneralSeries& f, const Floor& floor) {
    return std::min(floor.ceiling() - f.n, f.horizon());
}

namespace {

void check_inputs(const GeneralSeries& f, const Floor& floor, std::int64_t c, int j, const FloorElement& u) {
    if (f.coefficient_floor == nullptr || !floor.contains(*f.coefficient_floor))
        throw ValidationError("series coefficients do not embed into the oracle floor");
    if (c < 0) throw ValidationError("c must be nonnegative");
    if (j < 0) throw ValidationError("j must be nonnegative");
    if (floor.embed(u).residue() == 0) throw NotAUnit("perturbation factor u must be a unit");
}

bool vanishes_above_constant(const DualElement& e, std::int64_t modulus_exponent) {
    const auto& cs = e.coeffs();
    return std::all_of(cs.begin() + 1, cs.end(),
                       [&](const FloorElement& x) { return x.truncate(modulus_exponent).is_zero(); });
}

void require_certified(const GeneralSeries& f, const Floor& floor, std::int64_t d) {
    const std::int64_t cap = certified_co_precision(f, floor);
    if (d > cap)
        throw PrecisionExhausted("co-precision d = " + std::to_string(d) + " exceeds the certified maximum " +
                                 std::to_string(cap) + " (floor ceiling / series horizon)");
}

} // namespace

bool perturbed_eval(const GeneralSeries& f, const Floor& floor, std::int64_t c, int j, const FloorElement& u,
                    std::int64_t d, Flavor flavor) {
    check_inputs(f, floor, c, j, u);
    require_certified(f, floor, d);
    const DualRing ring = DualRing::for_level(floor, f.n, d, j, flavor);
    const DualElement value = dual_evaluate(f, perturbation(ring, c, u));
    return vanishes_above_constant(value, ring.modulus_exponent());
}

bool perturbed_eval_dpower(const GeneralSeries& f, const Floor& floor, std::int64_t c, int j, const FloorElement& u,
                           std::int64_t d, Flavor flavor) {
    check_inputs(f, floor, c, j, u);
    require_certified(f, floor, d);
    const FloorElement pi = floor.uniformizer();
    const FloorElement step = floor.embed(u) * pi.pow(static_cast<std::uint64_t>(c + 1));
    const std::int64_t N = nilpotency(floor.p(), j, flavor);
    FloorElement step_power = floor.one();
    for (std::int64_t m = 1; m < N; ++m) {
        step_power = step_power * step;
        const GeneralSeries dm = dpower(f, m);
        const FloorElement term = evaluate(dm, pi) * step_power;
        if (!term.truncate(f.n + d).is_zero()) return false;
    }
    return true;
}

std::int64_t capital_phi(const GeneralSeries& f, const Floor& floor, std::int64_t c, int j, Flavor flavor,
                         const FloorElement& u) {
    check_inputs(f, floor, c, j, u);
    const std::int64_t cap = certified_co_precision(f, floor);
    require_certified(f, floor, c);
    // One expansion modulo pi^{n+cap}; reducing it further gives every smaller d.
    const DualRing ring = DualRing::for_level(floor, f.n, cap, j, flavor);
    const DualElement value = dual_evaluate(f, perturbation(ring, c, u));
    if (!vanishes_above_constant(value, f.n + c)) throw TheoremViolation("congruence fails at d = c");
    std::int64_t d = c;
    while (true) {
        if (d == cap)
            throw PrecisionExhausted("Phi search reached the certified maximum d = " + std::to_string(cap) +
                                     " without failing; raise precision or horizon");
        if (!vanishes_above_constant(value, f.n + d + 1)) return d;
        ++d;
    }
}

std::int64_t capital_phi(const GeneralSeries& f, const Floor& floor, std::int64_t c, int j, Flavor flavor) {
    return capital_phi(f, floor, c, j, flavor, floor.one());
}

BaseScalar binomial_scalar(const BaseField& field, std::int64_t k, std::int64_t m) {
    if (m < 0 || m > k) return field.zero();
    const auto p = static_cast<std::int64_t>(field.p());
    int v = 0;
    BaseScalar num = field.one();
    BaseScalar den = field.one();
    for (std::int64_t i = 0; i < m; ++i) {
        std::int64_t a = k - i;
        std::int64_t b = i + 1;
        while (a % p == 0) {
            a /= p;
            ++v;
        }
        while (b % p == 0) {
            b /= p;
            --v;
        }
        num *= field.from_int(a);
        den *= field.from_int(b);
    }
    if (v > 0 && field.mode() == Mode::Equal) return field.zero();
    return (num * unit_inverse(den)).shift_up(v);
}

GeneralSeries dpower(const GeneralSeries& f, std::int64_t m) {
    if (m < 0) throw ValidationError("dpower: m must be nonnegative");
    if (m == 0) return f;
    const Floor& cf = *f.coefficient_floor;
    GeneralSeries out;
    out.coefficient_floor = f.coefficient_floor;
    out.n = std::max<std::int64_t>(0, f.n - m);
    const std::int64_t top = f.n + f.horizon();  // exclusive degree bound
    for (std::int64_t k = out.n + m; k < top; ++k) {
        const std::int64_t h = k - f.n;
        if (h < 0) {
            out.coeffs.push_back(cf.zero());
            continue;
        }
        out.coeffs.push_back(f.coeffs[static_cast<std::size_t>(h)].scaled(binomial_scalar(cf.field(), k, m)));
    }
    return out;
}

} // namespace ramify
