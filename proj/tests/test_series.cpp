#include <doctest.h>

#include "fixtures.hpp"
#include "ramify/errors.hpp"
#include "ramify/series.hpp"
#include "ramify/tower.hpp"

using namespace ramify;

namespace {

// Power series over F_p with small integer coefficients, independent of the library.
using Fp = std::vector<std::int64_t>;

Fp fp_mul(const Fp& a, const Fp& b, std::size_t len, std::int64_t p) {
    Fp out(len, 0);
    for (std::size_t i = 0; i < a.size() && i < len; ++i)
        for (std::size_t j = 0; j < b.size() && i + j < len; ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % p;
    return out;
}

Fp fp_inverse(const Fp& a, std::size_t len, std::int64_t p) {
    // a[0] assumed 1
    Fp out(len, 0);
    out[0] = 1;
    for (std::size_t k = 1; k < len; ++k) {
        std::int64_t s = 0;
        for (std::size_t i = 1; i <= k && i < a.size(); ++i) s += a[i] * out[k - i];
        out[k] = ((-s) % p + p) % p;
    }
    return out;
}

std::vector<std::uint32_t> as_digits(const Fp& f) { return {f.begin(), f.end()}; }

} // namespace

TEST_CASE("digit expansion of Example A: t = pi^2 / (1 + pi)") {
    const auto a = fixtures::example_a();
    const DigitSeries s = expand_digits(a.top->embed(a.ground->uniformizer()), 6);
    CHECK(s.n == 2);
    CHECK(s.digits == as_digits(fp_inverse({1, 1}, 6, 2)));
    CHECK(s.digits == std::vector<std::uint32_t>(6, 1));
}

TEST_CASE("digit expansion of 2 over X^2 - 2") {
    const auto q = fixtures::q2_sqrt2();
    const DigitSeries s = expand_digits(q.top->from_int(2), 8);
    CHECK(s.n == 2);
    CHECK(s.digits == std::vector<std::uint32_t>{1, 0, 0, 0, 0, 0, 0, 0});
}

TEST_CASE("digit expansion in the Example D tower: t = rho^4 / (1 + rho^3)") {
    const auto m = fixtures::example_d();
    const Floor& k = *m->parent()->parent();
    const DigitSeries s = expand_digits(m->embed(k.uniformizer()), 9);
    CHECK(s.n == 4);
    CHECK(s.digits == as_digits(fp_inverse({1, 0, 0, 1}, 9, 2)));
    for (std::int64_t h = 0; h < 9; ++h) CHECK(s.digits[static_cast<std::size_t>(h)] == (h % 3 == 0 ? 1U : 0U));
}

TEST_CASE("digit expansion over F_3: t = -pi^3 / (1 + pi)") {
    const auto f = fixtures::example_f3();
    const DigitSeries s = expand_digits(f.top->embed(f.ground->uniformizer()), 8);
    CHECK(s.n == 3);
    const Fp expected = fp_mul({2}, fp_inverse({1, 1}, 8, 3), 8, 3);
    CHECK(s.digits == as_digits(expected));
    const DigitSeries norm = normalize_leading_digit(s);
    CHECK(norm.digits.front() == 1);
    CHECK(norm.digits == as_digits(fp_inverse({1, 1}, 8, 3)));
    CHECK(normalize_leading_digit(norm) == norm);
}

TEST_CASE("expand_digits respects the ceiling") {
    const auto a = fixtures::example_a(10);
    CHECK_THROWS_AS(expand_digits(a.top->embed(a.ground->uniformizer()), 19), PrecisionExhausted);
}

TEST_CASE("evaluate reproduces the target and re-expansion is stable") {
    for (const auto& ext : fixtures::all()) {
        CAPTURE(ext.name);
        const FloorElement target = ext.top->embed(ext.ground->uniformizer());
        const std::int64_t h = 12;
        const DigitSeries s = expand_digits(target, h);
        const FloorElement back = evaluate(to_general(s, *ext.top), ext.top->uniformizer());
        CHECK((back - target).truncate(s.n + h).is_zero());
        CHECK(expand_digits(back, h) == s);
    }
    const auto a = fixtures::example_a();
    GeneralSeries x2{2, a.ground.get(), {a.ground->one()}};
    CHECK(evaluate(x2, a.top->uniformizer()) == a.top->uniformizer().pow(2));
}

TEST_CASE("alternate series takes the same value") {
    const auto a = fixtures::example_a();
    GeneralSeries x2{2, a.ground.get(), {a.ground->one(), a.ground->zero(), a.ground->zero(), a.ground->zero()}};
    const GeneralSeries alt = alternate_series(x2, a.top->eisenstein());
    CHECK(evaluate(alt, a.top->uniformizer()) == a.top->uniformizer().pow(2));
    const DigitSeries s = expand_digits(a.top->embed(a.ground->uniformizer()), 10);
    const GeneralSeries f = to_general(s, *a.top);
    const GeneralSeries f2 = alternate_series(f, a.top->eisenstein());
    const GeneralSeries f3 = alternate_series(f2, a.top->eisenstein());
    CHECK(!(f2.coeffs[2] == f.coeffs[2]));
    const FloorElement v = evaluate(f, a.top->uniformizer()).truncate(12);
    CHECK(evaluate(f2, a.top->uniformizer()).truncate(12) == v);
    CHECK(evaluate(f3, a.top->uniformizer()).truncate(12) == v);
}

namespace {

// (sum g_k X^k)^e coefficientwise, truncated to len terms.
std::vector<FloorElement> power_coeffs(const std::vector<FloorElement>& g, std::int64_t e, std::size_t len, const Floor& f) {
    std::vector<FloorElement> acc(len, f.zero());
    acc[0] = f.one();
    for (std::int64_t r = 0; r < e; ++r) {
        std::vector<FloorElement> next(len, f.zero());
        for (std::size_t i = 0; i < len; ++i)
            for (std::size_t j = 0; j < g.size() && i + j < len; ++j) next[i + j] += acc[i] * g[j];
        acc = next;
    }
    return acc;
}

void check_eth_root(const GeneralSeries& f, std::int64_t e) {
    const GeneralSeries fe = eth_root_substitute(f, e);
    CHECK(fe.n == f.n);
    CHECK(fe.horizon() == f.horizon() * e);
    const Floor& cf = *fe.coefficient_floor;
    const auto pw = power_coeffs(fe.coeffs, e, static_cast<std::size_t>(fe.horizon()), cf);
    for (std::int64_t k = 0; k < fe.horizon(); ++k) {
        const FloorElement expected = k % e == 0 ? cf.embed(f.coeffs[static_cast<std::size_t>(k / e)]) : cf.zero();
        CHECK(pw[static_cast<std::size_t>(k)] == expected);
    }
}

} // namespace

TEST_CASE("eth root substitution") {
    const auto q = fixtures::q2_sqrt2();
    GeneralSeries x2{2, q.ground.get(), {q.ground->one(), q.ground->zero(), q.ground->zero()}};
    const GeneralSeries r = eth_root_substitute(x2, 3);
    CHECK(r.coeffs[0] == q.ground->one());
    for (std::size_t k = 1; k < r.coeffs.size(); ++k) CHECK(r.coeffs[k].is_zero());
    CHECK_THROWS_AS(eth_root_substitute(x2, 2), BadTameDegree);
    CHECK_THROWS_AS(eth_root_substitute(x2, 0), BadTameDegree);

    for (const auto& ext : fixtures::all(24)) {
        CAPTURE(ext.name);
        const DigitSeries s = normalize_leading_digit(expand_digits(ext.top->embed(ext.ground->uniformizer()), 8));
        for (std::int64_t e : {1, 5, 7}) {
            if (std::gcd(e, static_cast<std::int64_t>(ext.top->p()) * s.n) != 1) continue;
            check_eth_root(to_general(s, *ext.top), e);
        }
    }
    const auto f3 = fixtures::example_f3();
    const DigitSeries raw = expand_digits(f3.top->embed(f3.ground->uniformizer()), 6);
    CHECK_THROWS_AS(eth_root_substitute(to_general(raw, *f3.top), 5), NotOneUnit);
}

TEST_CASE("series composition agrees with the tower expansion") {
    const auto m = fixtures::example_d();
    const TowerProfile t = compose_tower(m, {{10}, {10}, {12}});
    const DigitSeries direct = t.composed.digits;
    const std::int64_t len = std::min<std::int64_t>(t.h.horizon(), direct.horizon());
    REQUIRE(len >= 9);
    const GeneralSeries hd = to_general(direct, *m);
    for (std::int64_t h = 0; h < len; ++h) CHECK(t.h.coeffs[static_cast<std::size_t>(h)] == hd.coeffs[static_cast<std::size_t>(h)]);
}

TEST_CASE("default horizon") {
    const auto a = fixtures::example_a();
    CHECK(default_horizon(*a.top, *a.ground) == 2);
    const auto q = fixtures::q2_sqrt2();
    CHECK(default_horizon(*q.top, *q.ground) == 3 - 2 + 2 + 2);
    CHECK(max_horizon(*a.top, 2) == a.top->ceiling() - 2);
}
