#include <doctest.h>

#include <random>

#include "watkins/ec_models.hpp"
#include "watkins/error.hpp"
#include "watkins/families.hpp"
#include "watkins/local_data.hpp"

using namespace watkins;

namespace {

WeierstrassModel M(long a1, long a2, long a3, long a4, long a6) { return {a1, a2, a3, a4, a6}; }

// Kraus: (c4, c6) come from an integral model iff the local conditions at 2
// and 3 hold. A model is minimal at p iff the scaled pair (c4/p^4, c6/p^6)
// fails them or is not integral.
bool kraus_integral(const Integer& c4, const Integer& c6) {
    auto mod = [](const Integer& a, long m) {
        Integer r;
        mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), m);
        return r.get_si();
    };
    if (c4 * c4 * c4 - c6 * c6 == 0) return false;
    if (mpz_divisible_ui_p(Integer(c4 * c4 * c4 - c6 * c6).get_mpz_t(), 1728) == 0) return false;
    // p = 3
    if (nu_ext(3, c6) == ExtNat(2)) return false;
    // p = 2
    if (mod(c6, 4) == 3) return true;
    if (nu_ext(2, c4) < ExtNat(4)) return false;
    const long r = mod(c6, 32);
    return r == 0 || r == 8;
}

bool minimal_by_kraus(const WeierstrassModel& m) {
    const Invariants inv = invariants(m);
    for (const auto& pp : factorize(inv.disc).factors) {
        const Integer& p = pp.prime;
        if (pp.exponent < 12) continue;
        Integer p4 = p * p * p * p, p6 = p4 * p * p;
        if (mpz_divisible_p(inv.c4.get_mpz_t(), p4.get_mpz_t()) && mpz_divisible_p(inv.c6.get_mpz_t(), p6.get_mpz_t()) &&
            kraus_integral(inv.c4 / p4, inv.c6 / p6))
            return false;
    }
    return true;
}

WeierstrassModel random_model(std::mt19937_64& rng, long range) {
    std::uniform_int_distribution<long> d(-range, range);
    for (;;) {
        WeierstrassModel m = M(d(rng) % 2, d(rng) % 2, d(rng) % 2, d(rng), d(rng));
        if (discriminant(m) != 0) return m;
    }
}

} // namespace

TEST_CASE("invariants of table curves") {
    auto inv = invariants(M(0, 0, 0, -1, 0));
    CHECK(inv.c4 == 48);
    CHECK(inv.c6 == 0);
    CHECK(inv.disc == 64);
    inv = invariants(M(0, 0, 0, 4, 0));
    CHECK(inv.c4 == -192);
    CHECK(inv.disc == -4096);
    CHECK(discriminant(M(1, 1, 0, -1, 0)) == 89);
    CHECK_THROWS_AS(invariants(M(0, 0, 0, 0, 0)), Error);
}

TEST_CASE("model literals") {
    CHECK(WeierstrassModel::parse("[1,-1,1,-91,-310]") == M(1, -1, 1, -91, -310));
    CHECK(WeierstrassModel::parse(" 0, 0, 0, -1, 0 ") == M(0, 0, 0, -1, 0));
    CHECK(M(0, 0, 0, -1, 0).literal() == "[0,0,0,-1,0]");
    CHECK_THROWS_AS(WeierstrassModel::parse("1,2,3"), Error);
    CHECK_THROWS_AS(WeierstrassModel::parse("1,2,3,4,y"), Error);
}

TEST_CASE("minimal model examples") {
    CHECK(minimal_model(M(0, 0, 0, -1, 0)).model == M(0, 0, 0, -1, 0));
    const auto mm = minimal_model(M(0, 0, 0, -16, 0));
    CHECK(mm.model == M(0, 0, 0, -1, 0));
    CHECK(mm.transform.u == 2);
    CHECK(apply(M(0, 0, 0, -16, 0), mm.transform) == mm.model);
    CHECK(minimal_model(M(0, 0, 0, -4, 0)).model == M(0, 0, 0, -4, 0));
}

TEST_CASE("minimal models satisfy the Kraus oracle") {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 400; ++i) {
        const WeierstrassModel base = random_model(rng, 200);
        // short model of the curve scaled by u
        const long us[] = {1, 2, 3, 5, 6};
        const Integer u = us[rng() % 5];
        const Invariants inv = invariants(base);
        const Integer u4 = u * u * u * u, u6 = u4 * u * u;
        const WeierstrassModel big{0, 0, 0, Integer(-27 * inv.c4 * u4), Integer(-54 * inv.c6 * u6)};
        const MinimalModel mm = minimal_model(big);
        CHECK(minimal_by_kraus(mm.model));
        CHECK(apply(big, mm.transform) == mm.model);
        const Invariants mi = invariants(mm.model);
        CHECK(mi.c4 * mi.c4 * mi.c4 - mi.c6 * mi.c6 == 1728 * mi.disc);
        CHECK(minimal_model(base).model == mm.model);
        CHECK((mm.model.a1 == 0 || mm.model.a1 == 1));
        CHECK((mm.model.a3 == 0 || mm.model.a3 == 1));
        CHECK((mm.model.a2 >= -1 && mm.model.a2 <= 1));
    }
}

TEST_CASE("transform composition") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> small(-4, 4);
    for (int i = 0; i < 200; ++i) {
        const WeierstrassModel m = random_model(rng, 50);
        Transform a{1, small(rng), small(rng), small(rng)};
        Transform b{1, small(rng), small(rng), small(rng)};
        CHECK(apply(apply(m, a), b) == apply(m, a.then(b)));
    }
}

TEST_CASE("quadratic twist") {
    CHECK(quadratic_twist(M(0, 0, 0, -1, 0), TwistParameter(1L)) == M(0, 0, 0, -1, 0));
    CHECK(quadratic_twist(M(0, 0, 0, -1, 0), TwistParameter(5L)) == minimal_model(M(0, 0, 0, -25, 0)).model);
    CHECK(quadratic_twist(M(0, 0, 0, -1, 0), TwistParameter(-3L)) == minimal_model(M(0, 0, 0, -9, 0)).model);
    CHECK(quadratic_twist(M(0, 0, 0, -15, 0), TwistParameter(3L)) == minimal_model(M(0, 0, 0, -135, 0)).model);
    CHECK_THROWS_AS(TwistParameter(12L), Error);
    CHECK_THROWS_AS(TwistParameter(0L), Error);
    CHECK(TwistParameter::normalized(-12).value() == -3);
}

TEST_CASE("double twist preserves the minimal discriminant") {
    std::mt19937_64 rng(99);
    const auto bundle = CurveBundle::bundled();
    for (int i = 0; i < 500; ++i) {
        WeierstrassModel e = i % 2 ? random_model(rng, 300) : bundle.records()[rng() % 20].model;
        long d;
        do d = static_cast<long>(rng() % 201) - 100;
        while (d == 0 || !is_squarefree(d));
        const TwistParameter D(d);
        CHECK(discriminant(quadratic_twist(quadratic_twist(e, D), D)) == discriminant(minimal_model(e).model));
    }
}

TEST_CASE("rational 2-torsion") {
    CHECK(has_rational_two_torsion(M(0, 0, 0, -1, 0)));
    CHECK_FALSE(has_rational_two_torsion(M(0, 0, 1, -1, 0)));
    CHECK(has_rational_two_torsion(M(1, 1, 0, -1, 0)));
    CHECK_FALSE(has_rational_two_torsion(M(0, -1, 1, -10, -20)));
    const auto bundle = CurveBundle::bundled();
    for (const auto& r : bundle.records())
        for (long d : {-7L, -1L, 2L, 3L, 5L, 30L}) CHECK(has_rational_two_torsion(quadratic_twist(r.model, TwistParameter(d))));
}

TEST_CASE("2-adic signatures") {
    CHECK(signature(M(0, 0, 0, -1, 0), 2).str() == "(4, inf, 6)");
    CHECK(signature(M(0, 0, 0, 4, 0), 2).str() == "(6, inf, 12)");
    // the published table prints (7, 6, 14) here
    CHECK(signature(M(0, -1, 0, 3, 5), 2).str() == "(7, 10, 14)");
    CHECK(signature(M(1, -1, 1, -1, 0), 2).str() == "(0, 0, 0)");
    const auto s = signature(M(0, 0, 0, -16, 0), 2);
    CHECK(s.minimized);
    CHECK(s.str() == "(4, inf, 6)");
}

TEST_CASE("odd discriminant curves with 2-torsion have signature (0,0,0) at 2") {
    const auto bundle = CurveBundle::bundled();
    for (const auto& r : bundle.records())
        if (r.disc.value % 2 != 0) CHECK(signature(r.model, 2).str() == "(0, 0, 0)");
    for (const auto& p : setzer_primes(10000)) {
        const auto pair = setzer_pair(p);
        CHECK(signature(pair.curve_a1, 2).str() == "(0, 0, 0)");
        CHECK(signature(pair.curve_a2, 2).str() == "(0, 0, 0)");
    }
}
