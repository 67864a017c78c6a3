#include <doctest.h>

#include "fixtures.hpp"
#include "ramify/copolygon.hpp"
#include "ramify/errors.hpp"

using namespace ramify;

namespace {

GeneralSeries digit_series(const fixtures::Ext& ext, std::int64_t h = 16) {
    return to_general(analyze_extension(*ext.top, *ext.ground, h).digits, *ext.top);
}

} // namespace

TEST_CASE("F* coefficients for Example A") {
    const auto a = fixtures::example_a();
    const EpsilonSeries es = fstar(digit_series(a), *a.top);
    CHECK(es.order() == 3);
    CHECK(es.valuation(1) == 1);
    CHECK(es.valuation(2) == 0);
    CHECK(es.valuation(3) == 1);
    // c_2 = (1 + pi)^{-2}
    const FloorElement u = a.top->one() + a.top->uniformizer();
    CHECK(((es.coeffs[1] * u * u) - a.top->one()).truncate(es.certified).is_zero());
}

TEST_CASE("valuation functions for Example A") {
    const auto a = fixtures::example_a();
    const EpsilonSeries es = fstar(digit_series(a), *a.top);
    CHECK(valuation_function(es, Norm::VL) == PLFunction({{1, 1}, {0, 2}}));
    CHECK(valuation_function(es, Norm::VK) == PLFunction({{Rational(1, 2), Rational(1, 2)}, {0, 1}}));
    CHECK(truncated_psi(es, 1) == PLFunction({{1, 1}, {0, 2}}));
    CHECK(truncated_psi(es, 0) == PLFunction::line(1, 1));
    CHECK_THROWS_AS(truncated_psi(es, 2), ValidationError);
}

TEST_CASE("monomial X^2 over Q_2") {
    const auto q = fixtures::q2_sqrt2();
    GeneralSeries x2{2, q.ground.get(), std::vector<FloorElement>(20, q.ground->zero())};
    x2.coeffs[0] = q.ground->one();
    const EpsilonSeries es = fstar(x2, *q.top);
    CHECK(es.valuation(1) == 2);
    CHECK(es.valuation(2) == 0);
    CHECK(truncated_psi(es, 1) == PLFunction({{2, 1}, {0, 2}}));
    CHECK(valuation_function(es, Norm::VL) == PLFunction({{2, 1}, {0, 2}}));
}

TEST_CASE("uncertain coefficients are rejected when they could matter") {
    const auto a = fixtures::example_a();
    const EpsilonSeries es = fstar(to_general(expand_digits(a.top->embed(a.ground->uniformizer()), 1), *a.top), *a.top);
    CHECK(es.certified == 1);
    CHECK_THROWS_AS(valuation_function(es, Norm::VL), PrecisionExhausted);
}

TEST_CASE("property: copolygon identities on every fixture") {
    for (const auto& ext : fixtures::all()) {
        CAPTURE(ext.name);
        const auto an = analyze_extension(*ext.top, *ext.ground, 16);
        const GeneralSeries f = to_general(an.digits, *ext.top);
        const EpsilonSeries es = fstar(f, *ext.top);
        const auto& prof = an.profile;
        for (int j = 0; j <= prof.nu; ++j) CHECK(truncated_psi(es, j) == phi(prof, j));
        CHECK(valuation_function(es, Norm::VK) == multiply(phi(prof, prof.nu), Rational(1, prof.n)));

        const EpsilonSeries alt = fstar(alternate_series(f, ext.top->eisenstein()), *ext.top);
        CHECK(valuation_function(alt, Norm::VL) == valuation_function(es, Norm::VL));
        for (int j = 0; j <= prof.nu; ++j) CHECK(truncated_psi(alt, j) == truncated_psi(es, j));
    }
}
