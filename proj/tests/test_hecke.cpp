#include <doctest.h>

#include <cmath>
#include <random>

#include "watkins/congruence.hpp"
#include "watkins/error.hpp"
#include "watkins/families.hpp"
#include "watkins/hecke.hpp"
#include "watkins/local_data.hpp"

using namespace watkins;

namespace {

WeierstrassModel M(long a1, long a2, long a3, long a4, long a6) { return {a1, a2, a3, a4, a6}; }

long mod(const Integer& a, long q) {
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), q);
    return r.get_si();
}

// All (x, y) in F_q^2 on the curve, plus the point at infinity.
long brute_count(const WeierstrassModel& m, long q) {
    const long a1 = mod(m.a1, q), a2 = mod(m.a2, q), a3 = mod(m.a3, q), a4 = mod(m.a4, q), a6 = mod(m.a6, q);
    long count = 1;
    for (long x = 0; x < q; ++x)
        for (long y = 0; y < q; ++y) {
            const long lhs = (y * y + a1 * x % q * y + a3 * y) % q;
            const long rhs = (((x * x % q) * x) + a2 * (x * x % q) + a4 * x + a6) % q;
            if (lhs == rhs) ++count;
        }
    return count;
}

bool good_at(const WeierstrassModel& m, long q) { return tate(m, q).kind == ReductionKind::Good; }

} // namespace

TEST_CASE("a_q examples") {
    CHECK(a_q(M(0, 0, 0, -1, 0), 5) == -2);
    CHECK(a_q(M(0, 0, 0, -1, 0), 7) == 0);
    CHECK(a_q(M(0, 0, 0, -5, 0), 5) == 0);
    CHECK(a_q(M(0, 0, 0, -5, 0), 13) == -4);
    CHECK(a_q(M(0, 0, 0, -125, 0), 13) == 4);
    CHECK(a_q(M(0, -1, 1, -10, -20), 11) == 1);
    CHECK_THROWS_AS(a_q(M(0, 0, 0, -1, 0), 1000003), Error);
}

TEST_CASE("point counts agree with brute force enumeration") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<long> c(-50, 50);
    const auto primes = primes_up_to(150);
    for (int i = 0; i < 60; ++i) {
        WeierstrassModel m = M(c(rng) % 2, c(rng) % 2, c(rng) % 2, c(rng), c(rng));
        if (discriminant(m) == 0) continue;
        m = minimal_model(m).model;
        for (auto q : primes) {
            if (!good_at(m, q)) continue;
            CHECK(count_points(m, q) == brute_count(m, q));
            CHECK(a_q(m, q) == q + 1 - brute_count(m, q));
        }
    }
}

TEST_CASE("expand examples") {
    const auto t = expand(M(0, 0, 0, -1, 0), 100);
    CHECK(t.at(1) == 1);
    CHECK(t.at(9) == -3);
    CHECK(t.at(15) == 0);
    CHECK(t.at(13) == 6);
    CHECK_THROWS_AS(t.at(101), Error);
    CHECK_THROWS_AS(t.at(0), Error);
    const auto f = expand(M(1, -1, 1, -1, 0), 9);
    const std::vector<long> expected{1, -1, 0, -1, -2, 0, 4, 3, -3};
    for (int n = 1; n <= 9; ++n) CHECK(f.at(n) == expected[n - 1]);
}

TEST_CASE("tables are multiplicative and satisfy Hasse") {
    const auto bundle = CurveBundle::bundled();
    std::mt19937_64 rng(3);
    for (const auto& r : bundle.records()) {
        const auto t = expand(r.model, 2000);
        const Integer N = r.label_conductor();
        for (int i = 0; i < 200; ++i) {
            const long m = 1 + rng() % 44, n = 1 + rng() % 44;
            if (std::gcd(m, n) == 1) CHECK(t[m * n] == t[m] * t[n]);
        }
        for (auto q : primes_up_to(2000)) {
            if (nu(q, N) > 0) {
                CHECK(std::abs(t[q]) <= 1);
            } else {
                CHECK(t[q] * t[q] <= 4 * q);
                if (q * q <= 2000) CHECK(t[q * q] == t[q] * t[q] - q);
            }
        }
    }
}

TEST_CASE("expansion does not depend on the thread count") {
    const auto a = expand(M(1, -1, 0, -107, 552), 5000, 1);
    const auto b = expand(M(1, -1, 0, -107, 552), 5000, 8);
    CHECK(a == b);
}

TEST_CASE("gamma") {
    CHECK(gamma(1, 5) == 1);
    CHECK(gamma(13, 5) == -1);
    CHECK(gamma(169, 5) == 1);
    CHECK(gamma(13 * 3, 5) == gamma(13, 5) * gamma(3, 5));
    CHECK_THROWS_AS(gamma(15, 5), Error);
}

TEST_CASE("twisted coefficients carry the Kronecker character") {
    const auto bundle = CurveBundle::bundled();
    std::mt19937_64 rng(8);
    const auto primes = primes_up_to(500);
    int checked = 0;
    while (checked < 200) {
        const auto& r = bundle.records()[rng() % bundle.records().size()];
        long d;
        do d = static_cast<long>(rng() % 101) - 50;
        while (d == 0 || !is_squarefree(d));
        const auto twisted = quadratic_twist(r.model, TwistParameter(d));
        const Integer n1 = r.label_conductor(), n2 = conductor(twisted).value;
        for (int k = 0; k < 10; ++k) {
            const auto q = primes[rng() % primes.size()];
            if (nu(q, n1 * n2) > 0) continue;
            CHECK(a_q(twisted, q) == kronecker(d, q) * a_q(r.model, q));
            ++checked;
        }
    }
}

TEST_CASE("twist_table examples") {
    const auto base = expand(dx_curve(5), 50);
    CHECK(twist_table(dx_curve(5), TwistParameter(1L), 50) == base);
    const auto tw = twist_table(dx_curve(5), TwistParameter(5L), 50);
    CHECK(tw.at(13) == 4);
    CHECK(tw.at(5) == 0);
}

TEST_CASE("twists of y^2 = x^3 - dx follow gamma on coprime indices") {
    for (long d : {3L, 5L, 15L, 21L, 105L}) {
        const auto base = expand(dx_curve(d), 2000);
        for (const auto& D : divisors(d)) {
            const auto tw = twist_table(dx_curve(d), TwistParameter(D), 2000);
            for (long n = 1; n <= 2000; ++n) {
                if (std::gcd(n, 2 * d) != 1) continue;
                CHECK(tw[n] == gamma(n, D) * base[n]);
            }
        }
    }
}
