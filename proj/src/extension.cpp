#include "ramify/extension.hpp"

#include <algorithm>
#include <sstream>

#include "ramify/errors.hpp"

namespace ramify {

namespace {

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); }

std::vector<FloorElement> coords_of(const FloorElement& x) {
    const int n = x.floor().degree();
    std::vector<FloorElement> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out.push_back(x.coord(i));
    return out;
}

std::uint32_t pow_residue(std::uint32_t r, std::int64_t e, std::uint32_t p) {
    std::uint64_t result = 1, base = r % p;
    for (; e > 0; e >>= 1) {
        if (e & 1) result = result * base % p;
        base = base * base % p;
    }
    return static_cast<std::uint32_t>(result);
}

} // namespace

// ---------------------------------------------------------------------------
// FloorElement

FloorElement FloorElement::coord(int i) const {
    const Floor& f = *floor_;
    if (f.is_ground()) return *this;
    const std::size_t sub = f.parent()->size();
    const auto first = data_.begin() + static_cast<std::ptrdiff_t>(sub * static_cast<std::size_t>(i));
    return {f.parent(), std::vector<BaseScalar>(first, first + static_cast<std::ptrdiff_t>(sub))};
}

bool FloorElement::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const BaseScalar& s) { return s.is_zero(); });
}

std::int64_t FloorElement::valuation_or_ceiling() const {
    const Floor& f = *floor_;
    if (f.is_ground()) return data_.front().valuation_or_precision();
    const int n = f.degree();
    std::int64_t best = f.ceiling();
    for (int i = 0; i < n; ++i) {
        const FloorElement c = coord(i);
        if (c.is_zero()) continue;
        best = std::min(best, n * c.valuation_or_ceiling() + i);
    }
    return best;
}

std::uint32_t FloorElement::leading(std::int64_t k) const {
    const Floor& f = *floor_;
    if (k < 0) throw ValidationError("leading: negative index");
    if (k >= f.ceiling()) throw PrecisionExhausted("leading digit at valuation " + std::to_string(k) +
                                                   " beyond ceiling " + std::to_string(f.ceiling()));
    if (f.is_ground()) return data_.front().leading(static_cast<int>(k));
    const int n = f.degree();
    const auto i0 = static_cast<int>(k % n);
    const std::int64_t q = k / n;
    const std::uint32_t r = coord(i0).leading(q);
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(r) * pow_residue(f.norm_ratio_residue(), q, f.p()) %
                                      f.p());
}

FloorElement FloorElement::truncate(std::int64_t k) const {
    const Floor& f = *floor_;
    if (k >= f.ceiling()) return *this;
    if (f.is_ground()) return {floor_, {data_.front().truncate(static_cast<int>(k))}};
    const int n = f.degree();
    std::vector<FloorElement> cs;
    cs.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) cs.push_back(coord(i).truncate(std::max<std::int64_t>(0, ceil_div(k - i, n))));
    return f.from_coords(cs);
}

FloorElement FloorElement::mul_pi() const {
    const Floor& f = *floor_;
    if (f.is_ground()) return {floor_, {data_.front().shift_up(1)}};
    const int n = f.degree();
    std::vector<FloorElement> cs = coords_of(*this);
    const FloorElement top = cs.back();
    for (int i = n - 1; i > 0; --i) cs[static_cast<std::size_t>(i)] = cs[static_cast<std::size_t>(i - 1)];
    cs[0] = f.parent()->zero();
    if (!top.is_zero()) {
        const auto& c = f.eisenstein().coefficients;
        for (int i = 0; i < n; ++i) cs[static_cast<std::size_t>(i)] -= top * c[static_cast<std::size_t>(i)];
    }
    return f.from_coords(cs);
}

FloorElement FloorElement::pow(std::uint64_t e) const {
    FloorElement result = floor_->one();
    FloorElement base = *this;
    for (; e > 0; e >>= 1) {
        if (e & 1U) result *= base;
        if (e > 1) base *= base;
    }
    return result;
}

FloorElement FloorElement::scaled(const BaseScalar& s) const {
    FloorElement r = *this;
    for (auto& d : r.data_) d *= s;
    return r;
}

FloorElement& FloorElement::operator+=(const FloorElement& o) {
    if (floor_ != o.floor_) throw ValidationError("adding elements of different floors");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

FloorElement& FloorElement::operator-=(const FloorElement& o) {
    if (floor_ != o.floor_) throw ValidationError("subtracting elements of different floors");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

FloorElement FloorElement::operator-() const {
    FloorElement r = *this;
    for (auto& s : r.data_) s = -s;
    return r;
}

FloorElement operator*(const FloorElement& a, const FloorElement& b) {
    if (a.floor_ != b.floor_) throw ValidationError("multiplying elements of different floors");
    const Floor& f = *a.floor_;
    if (f.is_ground()) return {a.floor_, {a.data_.front() * b.data_.front()}};
    const int n = f.degree();
    const Floor& parent = *f.parent();
    const std::vector<FloorElement> ac = coords_of(a);
    const std::vector<FloorElement> bc = coords_of(b);
    std::vector<bool> bz(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) bz[static_cast<std::size_t>(j)] = bc[static_cast<std::size_t>(j)].is_zero();

    std::vector<FloorElement> prod(static_cast<std::size_t>(2 * n - 1), parent.zero());
    for (int i = 0; i < n; ++i) {
        const auto& ai = ac[static_cast<std::size_t>(i)];
        if (ai.is_zero()) continue;
        for (int j = 0; j < n; ++j) {
            if (bz[static_cast<std::size_t>(j)]) continue;
            prod[static_cast<std::size_t>(i + j)] += ai * bc[static_cast<std::size_t>(j)];
        }
    }
    // pi^n = -(c_{n-1} pi^{n-1} + ... + c_0)
    const auto& c = f.eisenstein().coefficients;
    for (int k = 2 * n - 2; k >= n; --k) {
        const FloorElement t = prod[static_cast<std::size_t>(k)];
        if (t.is_zero()) continue;
        for (int i = 0; i < n; ++i) prod[static_cast<std::size_t>(k - n + i)] -= t * c[static_cast<std::size_t>(i)];
    }
    prod.resize(static_cast<std::size_t>(n));
    return f.from_coords(prod);
}

bool operator==(const FloorElement& a, const FloorElement& b) {
    return a.floor_ == b.floor_ && a.data_ == b.data_;
}

std::string FloorElement::str() const {
    const Floor& f = *floor_;
    if (f.is_ground()) return data_.front().str();
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < f.degree(); ++i) {
        if (i > 0) os << ", ";
        os << coord(i).str();
    }
    os << "]";
    return os.str();
}

// ---------------------------------------------------------------------------
// Floor

std::shared_ptr<const Floor> Floor::ground(const BaseField& field) {
    auto f = std::shared_ptr<Floor>(new Floor(field));
    f->ceiling_ = field.precision();
    return f;
}

bool Floor::contains(const Floor& other) const {
    for (const Floor* f = this; f != nullptr; f = f->parent()) {
        if (f == &other) return true;
    }
    return false;
}

std::int64_t Floor::degree_over(const Floor& ancestor) const {
    std::int64_t d = 1;
    for (const Floor* f = this; f != nullptr; f = f->parent()) {
        if (f == &ancestor) return d;
        d *= f->degree();
    }
    throw ValidationError("degree_over: not an ancestor floor");
}

FloorElement Floor::zero() const { return {this, std::vector<BaseScalar>(size_, field_.zero())}; }

FloorElement Floor::one() const { return from_scalar(field_.one()); }

FloorElement Floor::from_int(std::int64_t v) const { return from_scalar(field_.from_int(v)); }

FloorElement Floor::from_scalar(const BaseScalar& s) const {
    FloorElement r = zero();
    r.data_[0] = s;
    return r;
}

FloorElement Floor::embed(const FloorElement& x) const {
    if (x.floor_ == this) return x;
    if (x.floor_ == nullptr || !contains(*x.floor_)) throw ValidationError("embed: element is not from a subfloor");
    FloorElement r = zero();
    std::copy(x.data_.begin(), x.data_.end(), r.data_.begin());
    return r;
}

FloorElement Floor::uniformizer() const {
    if (is_ground()) return from_scalar(field_.uniformizer());
    std::vector<FloorElement> cs(static_cast<std::size_t>(degree_), parent_->zero());
    cs[1] = parent_->one();
    return from_coords(cs);
}

FloorElement Floor::from_coords(const std::vector<FloorElement>& coords) const {
    if (is_ground()) {
        if (coords.size() != 1) throw ValidationError("ground element takes one coordinate");
        return {this, {coords[0].scalar()}};
    }
    if (coords.size() > static_cast<std::size_t>(degree_)) throw ValidationError("too many coordinates for floor");
    FloorElement r = zero();
    const std::size_t sub = parent_->size();
    for (std::size_t i = 0; i < coords.size(); ++i) {
        const FloorElement c = parent_->embed(coords[i]);
        std::copy(c.data_.begin(), c.data_.end(), r.data_.begin() + static_cast<std::ptrdiff_t>(i * sub));
    }
    return r;
}

std::shared_ptr<const Floor> attach_eisenstein(std::shared_ptr<const Floor> base, EisensteinPoly poly) {
    const int n = poly.degree();
    if (n < 2) throw NotEisenstein("Eisenstein polynomial must have degree at least 2");
    for (auto& c : poly.coefficients) {
        if (c.floor_ptr() == nullptr) throw NotEisenstein("uninitialized coefficient");
        if (c.floor_ptr() != base.get()) c = base->embed(c);
        if (c.valuation_or_ceiling() < 1)
            throw NotEisenstein("coefficient " + c.str() + " is not in the maximal ideal");
    }
    const FloorElement& c0 = poly.coefficients.front();
    if (c0.valuation_or_ceiling() != 1)
        throw NotEisenstein("constant coefficient " + c0.str() + " does not have valuation 1");

    auto f = std::shared_ptr<Floor>(new Floor(base->field()));
    f->parent_ = base;
    f->level_ = base->level() + 1;
    f->degree_ = n;
    f->size_ = base->size() * static_cast<std::size_t>(n);
    f->ceiling_ = base->ceiling() * n;
    f->poly_ = std::move(poly);
    const FloorElement& c = f->poly_.coefficients.front();
    // pi^n / pi_parent == -c_0 / pi_parent (mod pi)
    const std::uint32_t w = (-c).leading(1);
    f->ratio_residue_ = residue_inverse(w, f->p());
    f->c0_unit_inverse_ = unit_inverse(udiv(c, 1));
    return f;
}

// ---------------------------------------------------------------------------

ExtNat val(const FloorElement& x) {
    const std::int64_t v = x.valuation_or_ceiling();
    if (v >= x.floor().ceiling())
        throw PrecisionExhausted("element is indistinguishable from zero below valuation " +
                                 std::to_string(x.floor().ceiling()));
    return v;
}

std::uint32_t residue(const FloorElement& x) { return x.residue(); }

FloorElement udiv(const FloorElement& x, std::int64_t k) {
    if (k < 0) throw ValidationError("udiv: negative exponent");
    if (k == 0) return x;
    if (x.valuation_or_ceiling() < k) throw NotDivisible("element " + x.str() + " is not divisible by pi^" + std::to_string(k));
    const Floor& f = x.floor();
    if (f.is_ground()) return f.from_scalar(x.scalar().shift_down(static_cast<int>(std::min<std::int64_t>(k, f.ceiling()))));
    const int n = f.degree();
    const Floor& parent = *f.parent();
    const auto& c = f.eisenstein().coefficients;
    FloorElement cur = x;
    for (std::int64_t step = 0; step < k; ++step) {
        std::vector<FloorElement> cs = coords_of(cur);
        // x_0 / c_0 = (x_0 / pi_parent) * (c_0 / pi_parent)^{-1}
        const FloorElement q = udiv(cs[0], 1) * f.c0_unit_inverse_;
        std::vector<FloorElement> next(static_cast<std::size_t>(n), parent.zero());
        for (int i = 1; i < n; ++i) next[static_cast<std::size_t>(i - 1)] = cs[static_cast<std::size_t>(i)];
        // 1/pi = -(pi^{n-1} + c_{n-1} pi^{n-2} + ... + c_1) / c_0
        next[static_cast<std::size_t>(n - 1)] -= q;
        for (int i = 1; i < n; ++i) next[static_cast<std::size_t>(i - 1)] -= q * c[static_cast<std::size_t>(i)];
        cur = f.from_coords(next);
    }
    return cur;
}

FloorElement unit_inverse(const FloorElement& x) {
    const std::uint32_t r = x.residue();
    if (r == 0) throw NotAUnit("element " + x.str() + " is not a unit");
    const Floor& f = x.floor();
    FloorElement y = f.from_int(residue_inverse(r, f.p()));
    const FloorElement two = f.from_int(2);
    for (std::int64_t correct = 1; correct < f.ceiling(); correct *= 2) y = y * (two - x * y);
    return y;
}

std::int64_t different_exponent(const Floor& floor) {
    if (floor.is_ground()) throw ValidationError("different_exponent: ground floor has no Eisenstein polynomial");
    const int n = floor.degree();
    const auto& c = floor.eisenstein().coefficients;
    const Floor& parent = *floor.parent();
    // E'(X) = n X^{n-1} + sum i c_i X^{i-1}, in coordinates.
    std::vector<FloorElement> cs(static_cast<std::size_t>(n), parent.zero());
    cs[static_cast<std::size_t>(n - 1)] = parent.from_int(n);
    for (int i = 1; i < n; ++i) cs[static_cast<std::size_t>(i - 1)] += parent.from_int(i) * c[static_cast<std::size_t>(i)];
    const FloorElement d = floor.from_coords(cs);
    const std::int64_t v = d.valuation_or_ceiling();
    if (v >= floor.ceiling())
        throw PrecisionExhausted("E'(pi) vanishes to precision (inseparable polynomial or precision too low)");
    return v;
}

ExtNat p_valuation(const Floor& floor) {
    if (floor.mode() == Mode::Equal) return ExtNat::infinity();
    return floor.total_degree();
}

std::int64_t relative_different(const Floor& top, const Floor& base) {
    std::int64_t total = 0;
    std::int64_t scale = 1;
    for (const Floor* f = &top; f != &base; f = f->parent()) {
        if (f == nullptr || f->is_ground()) throw ValidationError("relative_different: base is not an ancestor");
        total += scale * different_exponent(*f);
        scale *= f->degree();
    }
    return total;
}

} // namespace ramify
