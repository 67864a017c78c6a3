#include <doctest.h>

#include "fixtures.hpp"
#include "ramify/errors.hpp"
#include "ramify/invariants.hpp"

using namespace ramify;

namespace {

// Kummer: v_p(binom(b, c)) is the number of carries adding c and b - c in base p.
int kummer(std::int64_t b, std::int64_t c, std::int64_t p) {
    std::int64_t x = c;
    std::int64_t y = b - c;
    int carries = 0;
    int carry = 0;
    while (x > 0 || y > 0 || carry > 0) {
        const std::int64_t s = x % p + y % p + carry;
        carry = s >= p ? 1 : 0;
        carries += carry;
        x /= p;
        y /= p;
    }
    return carries;
}

DigitSeries series(std::uint32_t p, std::int64_t n, std::vector<std::uint32_t> digits) { return {p, n, std::move(digits)}; }

const ExtNat kInf = ExtNat::infinity();

} // namespace

TEST_CASE("tilde indices") {
    const auto ta = tilde_indices(series(2, 2, std::vector<std::uint32_t>(6, 1)), 1);
    CHECK(ta.values == std::vector<ExtNat>{1, 0});
    const auto tq = tilde_indices(series(2, 2, {1, 0, 0, 0, 0}), 1);
    CHECK(tq.values == std::vector<ExtNat>{kInf, 0});
    const auto td = tilde_indices(series(2, 4, {1, 0, 0, 1, 0, 0, 1, 0, 0}), 2);
    CHECK(td.values == std::vector<ExtNat>{3, 3, 0});
}

TEST_CASE("indices") {
    CHECK(indices(tilde_indices(series(2, 2, std::vector<std::uint32_t>(6, 1)), 1), kInf) == std::vector<std::int64_t>{1, 0});
    CHECK(indices(tilde_indices(series(2, 2, {1, 0, 0, 0, 0}), 1), ExtNat(2)) == std::vector<std::int64_t>{2, 0});
    CHECK(indices(tilde_indices(series(2, 4, {1, 0, 0, 1, 0, 0, 1, 0, 0}), 2), kInf) ==
          std::vector<std::int64_t>{3, 3, 0});
    // No odd digit within the horizon and no p-adic cap.
    CHECK_THROWS_AS(indices(tilde_indices(series(2, 2, {1, 0, 0, 0}), 1), kInf), IndexUnresolved);
    // Candidate not below the horizon.
    CHECK_THROWS_AS(indices(tilde_indices(series(2, 2, {1, 0}), 1), ExtNat(2)), IndexUnresolved);
    // Leading digit missing.
    CHECK_THROWS_AS(indices(tilde_indices(series(2, 2, {0, 1}), 1), kInf), IndexUnresolved);
}

TEST_CASE("closed form and chain") {
    const auto prof = resolve_profile(series(2, 4, {1, 0, 0, 1, 0, 0, 1, 0, 0}), kInf);
    CHECK(prof.nu == 2);
    CHECK(prof.a == 1);
    CHECK_NOTHROW(check_chain(prof));
    auto broken = prof;
    broken.i = {3, 4, 0};
    CHECK_THROWS_AS(check_chain(broken), TheoremViolation);
    CHECK(closed_form_indices({kInf, 5, 0}, ExtNat(2)) == std::vector<ExtNat>{4, 2, 0});
}

TEST_CASE("phi_tilde and phi") {
    const auto ex = fixtures::example_a();
    const auto a = analyze_extension(*ex.top, *ex.ground);
    const auto& pa = a.profile;
    CHECK(phi_tilde(pa, 0).intercept == 1);
    CHECK(phi_tilde(pa, 0).slope == 1);
    CHECK(phi_tilde(pa, 1).intercept == 0);
    CHECK(phi_tilde(pa, 1).slope == 2);
    CHECK(phi(pa, 1) == PLFunction({{1, 1}, {0, 2}}));
    CHECK(phi(pa, 1).vertices().size() == 1);
    CHECK(phi(pa, 1).vertices()[0].x == 1);
    CHECK(phi(pa, 1).vertices()[0].y == 2);
    CHECK(phi(pa, 0) == PLFunction::line(1, 1));
    CHECK_THROWS_AS(phi(pa, 2), ValidationError);

    const auto qx = fixtures::q2_sqrt2();
    const auto q = analyze_extension(*qx.top, *qx.ground);
    CHECK(q.profile.i == std::vector<std::int64_t>{2, 0});
    CHECK(phi_tilde(q.profile, 0).intercept == 2);
    CHECK(phi(q.profile, 1).vertices()[0].x == 2);
    CHECK(phi(q.profile, 1).vertices()[0].y == 4);
}

TEST_CASE("binomial valuations") {
    CHECK(binom_val(4, 2, 2).value == 1);
    CHECK(binom_val(4, 2, 2).equality);
    CHECK(binom_val(9, 9, 3).value == 0);
    CHECK(binom_val(7, 2, 2).value == 0);
    CHECK(binom_val(7, 2, 2).lower_bound == -1);
    CHECK_THROWS_AS(binom_val(2, 3, 2), ValidationError);
    for (std::int64_t p : {2, 3, 5})
        for (std::int64_t b = 1; b <= 80; ++b)
            for (std::int64_t c = 1; c <= b; ++c) {
                const BinomVal v = binom_val(b, c, static_cast<std::uint32_t>(p));
                CHECK(v.value == kummer(b, c, p));
            }
}

TEST_CASE("phi_binomial examples") {
    const DigitSeries a = series(2, 2, std::vector<std::uint32_t>(8, 1));
    CHECK(phi_binomial(a, kInf, 1, 1) == 2);
    CHECK(phi_binomial(a, kInf, 1, 0) == 0);
    const DigitSeries q = series(2, 2, {1, 0, 0, 0, 0, 0});
    CHECK(phi_binomial(q, ExtNat(2), 1, 0) == 0);
    CHECK(phi_binomial(q, ExtNat(2), 0, 0) == 2);
}

TEST_CASE("property: invariants on every fixture") {
    const std::vector<Rational> xs{0, {1, 3}, {1, 2}, 1, 2, {7, 2}, 5};
    for (const auto& ext : fixtures::all()) {
        CAPTURE(ext.name);
        const auto an = analyze_extension(*ext.top, *ext.ground, 16);
        const auto& prof = an.profile;
        CHECK_NOTHROW(check_chain(prof));
        for (int j = 0; j <= prof.nu; ++j) {
            const PLFunction f = phi(prof, j);
            CHECK(f(0) == prof.i[static_cast<std::size_t>(j)]);
            for (const auto& l : f.lines()) {
                bool p_power = false;
                std::int64_t pj = 1;
                for (int j0 = 0; j0 <= j; ++j0, pj *= prof.p) p_power |= l.slope == Rational(pj);
                CHECK(p_power);
            }
            for (const auto& x : xs) {
                CHECK(phi_binomial(an.digits, prof.vLp, j, x) == f(x));
                if (j > 0) CHECK(f(x) <= phi(prof, j - 1)(x));
            }
        }
    }
}
