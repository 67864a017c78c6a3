#include "ramify/base.hpp"

#include <algorithm>
#include <sstream>

#include "ramify/errors.hpp"

namespace ramify {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t reduce_signed(std::int64_t v, std::uint64_t m) {
    const auto sm = static_cast<__int128>(m);
    auto r = static_cast<__int128>(v) % sm;
    if (r < 0) r += sm;
    return static_cast<std::uint64_t>(r);
}

std::uint64_t ipow(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

} // namespace

std::string to_string(Mode m) { return m == Mode::Equal ? "equal" : "mixed"; }

int vp(std::int64_t n, std::int64_t p) {
    if (n <= 0) throw ValidationError("vp: argument must be positive");
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

bool is_prime(std::uint32_t p) {
    if (p < 2) return false;
    for (std::uint32_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

void ResidueDesc::validate() const {
    if (!is_prime(p)) throw ValidationError("residue characteristic " + std::to_string(p) + " is not prime");
    if (f != 1) throw ValidationError("only prime residue fields (f = 1) are supported");
}

std::uint32_t residue_inverse(std::uint32_t r, std::uint32_t p) {
    r %= p;
    if (r == 0) throw NotAUnit("zero residue has no inverse");
    // Fermat: r^(p-2).
    std::uint64_t result = 1, base = r;
    for (std::uint32_t e = p - 2; e > 0; e >>= 1) {
        if (e & 1U) result = result * base % p;
        base = base * base % p;
    }
    return static_cast<std::uint32_t>(result);
}

// ---------------------------------------------------------------------------
// BaseField

int BaseField::max_mixed_precision(std::uint32_t p) {
    int n = 0;
    u128 acc = 1;
    while (acc * p < (static_cast<u128>(1) << 62)) {
        acc *= p;
        ++n;
    }
    return n;
}

BaseField::BaseField(Mode mode, std::uint32_t p, int precision) : mode_(mode), p_(p), prec_(precision) {
    ResidueDesc{p, 1}.validate();
    if (precision < 1) throw ValidationError("precision must be at least 1");
    if (mode == Mode::Equal) {
        if (precision > kMaxEqualPrecision)
            throw ValidationError("equal-characteristic precision is limited to " +
                                  std::to_string(kMaxEqualPrecision));
        if (p > 255) throw ValidationError("equal-characteristic mode supports p < 256");
    } else {
        if (precision > max_mixed_precision(p))
            throw ValidationError("mixed-characteristic precision " + std::to_string(precision) +
                                  " exceeds the 62-bit limit for p = " + std::to_string(p));
        modulus_ = ipow(p, precision);
    }
}

BaseScalar BaseField::zero() const { return BaseScalar(*this); }

BaseScalar BaseField::one() const { return from_int(1); }

BaseScalar BaseField::from_int(std::int64_t v) const {
    BaseScalar s(*this);
    if (mode_ == Mode::Mixed) {
        s.value_ = reduce_signed(v, modulus_);
    } else {
        s.coeffs_[0] = static_cast<std::uint8_t>(reduce_signed(v, p_));
    }
    return s;
}

BaseScalar BaseField::uniformizer() const { return one().shift_up(1); }

BaseScalar BaseField::from_terms(const std::vector<std::pair<std::int64_t, int>>& terms) const {
    BaseScalar s = zero();
    for (const auto& [digit, power] : terms) {
        if (power < 0) throw ValidationError("negative power in base-field element");
        s += from_int(digit).shift_up(power);
    }
    return s;
}

BaseScalar BaseField::from_p_power(int v, std::uint64_t unit_residue_mod) const {
    if (mode_ == Mode::Equal) {
        if (v > 0) return zero();
        return from_int(static_cast<std::int64_t>(unit_residue_mod % p_));
    }
    BaseScalar s = zero();
    s.value_ = unit_residue_mod % modulus_;
    return s.shift_up(v);
}

// ---------------------------------------------------------------------------
// BaseScalar

bool BaseScalar::is_zero() const {
    if (mode() == Mode::Mixed) return value_ == 0;
    const int n = precision();
    return std::all_of(coeffs_.begin(), coeffs_.begin() + n, [](std::uint8_t c) { return c == 0; });
}

int BaseScalar::valuation_or_precision() const {
    const int n = precision();
    if (mode() == Mode::Mixed) {
        if (value_ == 0) return n;
        int v = 0;
        std::uint64_t x = value_;
        while (x % p() == 0) {
            x /= p();
            ++v;
        }
        return v;
    }
    for (int k = 0; k < n; ++k)
        if (coeffs_[static_cast<std::size_t>(k)] != 0) return k;
    return n;
}

ExtNat BaseScalar::val() const {
    const int v = valuation_or_precision();
    if (v >= precision()) throw PrecisionExhausted("base scalar is indistinguishable from zero at precision " +
                                                   std::to_string(precision()));
    return v;
}

std::uint32_t BaseScalar::leading(int k) const {
    if (k < 0) throw ValidationError("leading: negative index");
    if (k >= precision()) throw PrecisionExhausted("leading digit beyond base precision");
    if (mode() == Mode::Equal) return coeffs_[static_cast<std::size_t>(k)];
    return static_cast<std::uint32_t>((value_ / ipow(p(), k)) % p());
}

BaseScalar BaseScalar::shift_down(int k) const {
    if (k == 0) return *this;
    if (valuation_or_precision() < k) throw NotDivisible("base scalar not divisible by pi_K^" + std::to_string(k));
    BaseScalar r(field_);
    if (k >= precision()) return r;
    if (mode() == Mode::Mixed) {
        r.value_ = value_ / ipow(p(), k);
    } else {
        const int n = precision();
        for (int i = k; i < n; ++i) r.coeffs_[static_cast<std::size_t>(i - k)] = coeffs_[static_cast<std::size_t>(i)];
    }
    return r;
}

BaseScalar BaseScalar::shift_up(int k) const {
    if (k == 0) return *this;
    BaseScalar r(field_);
    if (k >= precision()) return r;
    if (mode() == Mode::Mixed) {
        r.value_ = mulmod(value_, ipow(p(), k), field_.modulus());
    } else {
        const int n = precision();
        for (int i = n - 1; i >= k; --i) r.coeffs_[static_cast<std::size_t>(i)] = coeffs_[static_cast<std::size_t>(i - k)];
    }
    return r;
}

BaseScalar BaseScalar::truncate(int k) const {
    if (k >= precision()) return *this;
    BaseScalar r(field_);
    if (k <= 0) return r;
    if (mode() == Mode::Mixed) {
        r.value_ = value_ % ipow(p(), k);
    } else {
        std::copy(coeffs_.begin(), coeffs_.begin() + k, r.coeffs_.begin());
    }
    return r;
}

BaseScalar& BaseScalar::operator+=(const BaseScalar& o) {
    if (mode() == Mode::Mixed) {
        const std::uint64_t m = field_.modulus();
        value_ = (value_ + o.value_) % m;
    } else {
        const int n = precision();
        const std::uint32_t pp = p();
        for (int i = 0; i < n; ++i) {
            auto& c = coeffs_[static_cast<std::size_t>(i)];
            c = static_cast<std::uint8_t>((c + o.coeffs_[static_cast<std::size_t>(i)]) % pp);
        }
    }
    return *this;
}

BaseScalar& BaseScalar::operator-=(const BaseScalar& o) { return *this += -o; }

BaseScalar BaseScalar::operator-() const {
    BaseScalar r(field_);
    if (mode() == Mode::Mixed) {
        r.value_ = value_ == 0 ? 0 : field_.modulus() - value_;
    } else {
        const int n = precision();
        const std::uint32_t pp = p();
        for (int i = 0; i < n; ++i) {
            const auto c = coeffs_[static_cast<std::size_t>(i)];
            r.coeffs_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(c == 0 ? 0 : pp - c);
        }
    }
    return r;
}

BaseScalar& BaseScalar::operator*=(const BaseScalar& o) {
    if (mode() == Mode::Mixed) {
        value_ = mulmod(value_, o.value_, field_.modulus());
        return *this;
    }
    const int n = precision();
    const std::uint32_t pp = p();
    const int va = valuation_or_precision();
    const int vb = o.valuation_or_precision();
    std::array<std::uint32_t, BaseField::kMaxEqualPrecision> acc{};
    for (int i = va; i < n; ++i) {
        const std::uint32_t a = coeffs_[static_cast<std::size_t>(i)];
        if (a == 0) continue;
        for (int j = vb; i + j < n; ++j) acc[static_cast<std::size_t>(i + j)] += a * o.coeffs_[static_cast<std::size_t>(j)];
    }
    for (int k = 0; k < n; ++k) coeffs_[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(acc[static_cast<std::size_t>(k)] % pp);
    return *this;
}

BaseScalar BaseScalar::pow(std::uint64_t e) const {
    BaseScalar result = field_.one();
    BaseScalar base = *this;
    for (; e > 0; e >>= 1) {
        if (e & 1U) result *= base;
        base *= base;
    }
    return result;
}

bool operator==(const BaseScalar& a, const BaseScalar& b) {
    if (!(a.field_ == b.field_)) return false;
    if (a.mode() == Mode::Mixed) return a.value_ == b.value_;
    return std::equal(a.coeffs_.begin(), a.coeffs_.begin() + a.precision(), b.coeffs_.begin());
}

std::string BaseScalar::str() const {
    std::ostringstream os;
    if (mode() == Mode::Mixed) {
        os << value_ << " mod " << p() << "^" << precision();
        return os.str();
    }
    bool first = true;
    for (int k = 0; k < precision(); ++k) {
        const auto c = coefficient(k);
        if (c == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << c;
        if (k > 0) os << "*t^" << k;
    }
    if (first) os << "0";
    os << " + O(t^" << precision() << ")";
    return os.str();
}

// ---------------------------------------------------------------------------

BaseScalar teichmuller_lift(const BaseField& field, std::uint32_t r) {
    if (r >= field.p()) throw ValidationError("teichmuller_lift: residue out of range");
    BaseScalar x = field.from_int(r);
    if (field.mode() == Mode::Equal || r == 0) return x;
    // x -> x^p gains one p-adic digit of agreement per step.
    for (int i = 0; i < field.precision(); ++i) x = x.pow(field.p());
    return x;
}

std::vector<Digit> digit_expand_base(const BaseScalar& s) {
    const BaseField& field = s.field();
    std::vector<Digit> digits;
    digits.reserve(static_cast<std::size_t>(field.precision()));
    BaseScalar rest = s;
    BaseScalar power = field.one();
    for (int k = 0; k < field.precision(); ++k) {
        const std::uint32_t r = rest.leading(k);
        BaseScalar lift = teichmuller_lift(field, r);
        rest -= lift * power;
        digits.push_back({r, std::move(lift)});
        power = power.shift_up(1);
    }
    return digits;
}

BaseScalar reconstruct_base(const BaseField& field, const std::vector<Digit>& digits) {
    BaseScalar s = field.zero();
    for (std::size_t k = 0; k < digits.size(); ++k) s += digits[k].lift.shift_up(static_cast<int>(k));
    return s;
}

BaseScalar unit_inverse(const BaseScalar& s) {
    const std::uint32_t r = s.residue();
    if (r == 0) throw NotAUnit("base scalar " + s.str() + " is not a unit");
    const BaseField& field = s.field();
    // Newton: y <- y (2 - s y), doubling correct digits each round.
    BaseScalar y = field.from_int(residue_inverse(r, field.p()));
    const BaseScalar two = field.from_int(2);
    for (int correct = 1; correct < field.precision(); correct *= 2) y = y * (two - s * y);
    return y;
}

} // namespace ramify
