#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "ramify/errors.hpp"

using namespace ramify;

TEST_CASE("attach_eisenstein") {
    const auto a = fixtures::example_a(20);
    CHECK(a.top->degree() == 2);
    CHECK(a.top->ceiling() == 40);
    CHECK(val(a.top->embed(a.ground->uniformizer())) == ExtNat(2));

    const auto q = fixtures::q2_sqrt2(20);
    CHECK(val(q.top->from_int(2)) == ExtNat(2));

    const BaseField f = BaseField::equal(2, 20);
    auto K = Floor::ground(f);
    const EisensteinPoly bad{{K->from_scalar(f.from_terms({{1, 2}})), K->from_scalar(f.uniformizer())}};
    CHECK_THROWS_AS(attach_eisenstein(K, bad), NotEisenstein);
    const EisensteinPoly unit{{K->from_scalar(f.uniformizer()), K->one()}};
    CHECK_THROWS_AS(attach_eisenstein(K, unit), NotEisenstein);
}

TEST_CASE("valuation and residue") {
    const auto a = fixtures::example_a(20);
    const FloorElement pi = a.top->uniformizer();
    const FloorElement t = a.top->embed(a.ground->uniformizer());
    CHECK(val(pi) == ExtNat(1));
    CHECK(val(t) == ExtNat(2));
    CHECK(residue(pi) == 0);
    CHECK(residue(a.top->one() + pi) == 1);
    CHECK(residue(udiv(t, 2)) == 1);
    CHECK_THROWS_AS(val(a.top->zero()), PrecisionExhausted);

    const auto q = fixtures::q2_sqrt2(20);
    CHECK(val(q.top->from_int(2) + q.top->uniformizer()) == ExtNat(1));
}

TEST_CASE("udiv") {
    const auto a = fixtures::example_a(20);
    const FloorElement pi = a.top->uniformizer();
    CHECK(udiv(pi.pow(3), 2) == pi);
    CHECK_THROWS_AS(udiv(a.top->one() + pi, 1), NotDivisible);
    // t / pi^2 = 1 / (1 + pi)
    const FloorElement q = udiv(a.top->embed(a.ground->uniformizer()), 2);
    CHECK((q * (a.top->one() + pi)).truncate(30) == a.top->one().truncate(30));
}

TEST_CASE("different exponent and p-valuation") {
    CHECK(different_exponent(*fixtures::example_a().top) == 2);
    CHECK(different_exponent(*fixtures::q2_sqrt2().top) == 3);
    CHECK(different_exponent(*fixtures::q2_x2_2x_2().top) == 2);
    CHECK(p_valuation(*fixtures::example_a().top).is_infinite());
    CHECK(p_valuation(*fixtures::q2_sqrt2().ground) == ExtNat(1));
    CHECK(p_valuation(*fixtures::q2_sqrt2().top) == ExtNat(2));
    const auto m = fixtures::example_d();
    CHECK(relative_different(*m, *m->parent()->parent()) == 2 * 2 + 2);
}

TEST_CASE("Eisenstein relation holds to the ceiling") {
    for (const auto& ext : fixtures::all(20)) {
        CAPTURE(ext.name);
        const FloorElement pi = ext.top->uniformizer();
        FloorElement e = pi.pow(static_cast<std::uint64_t>(ext.top->degree()));
        const auto& c = ext.top->eisenstein().coefficients;
        for (std::size_t i = 0; i < c.size(); ++i) e += ext.top->embed(c[i]) * pi.pow(i);
        CHECK(e.is_zero());
    }
}

TEST_CASE("two-step tower restricts valuations") {
    const auto m = fixtures::example_d(20);
    const Floor& k = *m->parent()->parent();
    CHECK(m->ceiling() == 80);
    CHECK(val(m->embed(k.uniformizer())) == ExtNat(4));
    CHECK(val(m->embed(k.from_scalar(k.field().from_terms({{1, 3}})))) == ExtNat(12));
    CHECK(val(m->embed(m->parent()->uniformizer())) == ExtNat(2));
}

namespace {

FloorElement random_element(const Floor& f, std::mt19937_64& rng, int max_terms) {
    FloorElement x = f.zero();
    const FloorElement pi = f.uniformizer();
    const std::int64_t start = static_cast<std::int64_t>(rng() % 4);
    for (int k = 0; k < max_terms; ++k)
        x += f.from_int(static_cast<std::int64_t>(rng() % f.p())) * pi.pow(static_cast<std::uint64_t>(start + k));
    return x;
}

} // namespace

TEST_CASE("property: valuation is multiplicative and ultrametric") {
    std::mt19937_64 rng(11);
    std::vector<std::shared_ptr<const Floor>> floors;
    for (const auto& ext : fixtures::all(16)) floors.push_back(ext.top);
    floors.push_back(fixtures::example_d(16));
    for (const auto& f : floors) {
        for (int trial = 0; trial < 60; ++trial) {
            const FloorElement x = random_element(*f, rng, 6);
            const FloorElement y = random_element(*f, rng, 6);
            const std::int64_t vx = x.valuation_or_ceiling();
            const std::int64_t vy = y.valuation_or_ceiling();
            if (vx + vy >= f->ceiling()) continue;
            CHECK(val(x * y) == ExtNat(vx + vy));
            CHECK((x + y).valuation_or_ceiling() >= std::min(vx, vy));
            if (residue(x) != 0) CHECK((x * unit_inverse(x)) == f->one());
            CHECK(x * y == y * x);
        }
    }
}
