#include <doctest.h>

#include <random>

#include "watkins/arith.hpp"
#include "watkins/error.hpp"

using namespace watkins;

namespace {

// Legendre symbol by listing the squares mod p.
int legendre_by_residues(long a, long p) {
    const long r = ((a % p) + p) % p;
    if (r == 0) return 0;
    for (long x = 1; x < p; ++x)
        if (x * x % p == r) return 1;
    return -1;
}

// Kronecker symbol from its definition: Legendre symbols for odd primes,
// the mod 8 rule at 2 and the sign rule at -1.
int kronecker_by_definition(long a, long n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) result = -result;
    }
    while (n % 2 == 0) {
        n /= 2;
        if (a % 2 == 0) return 0;
        const long r = ((a % 8) + 8) % 8;
        if (r == 3 || r == 5) result = -result;
    }
    for (long p = 3; p <= n; p += 2) {
        while (n % p == 0) {
            n /= p;
            result *= legendre_by_residues(a, p);
        }
    }
    return result;
}

bool trial_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

} // namespace

TEST_CASE("factorize examples") {
    auto f = factorize(105);
    CHECK(f.sign == 1);
    REQUIRE(f.factors.size() == 3);
    CHECK(f.factors[0].prime == 3);
    CHECK(f.factors[2].prime == 7);
    f = factorize(-1);
    CHECK(f.sign == -1);
    CHECK(f.factors.empty());
    f = factorize(1600);
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0].prime == 2);
    CHECK(f.factors[0].exponent == 6);
    CHECK(f.factors[1].prime == 5);
    CHECK(f.factors[1].exponent == 2);
    CHECK_THROWS_AS(factorize(0), Error);
}

TEST_CASE("factorize reconstructs n, including large cofactors") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 300; ++i) {
        Integer n = Integer(static_cast<long>(rng() >> 20)) * Integer(static_cast<long>(rng() >> 30)) + 1;
        if (i % 2) n = -n;
        const auto f = factorize(n);
        CHECK(f.product() == n);
        for (const auto& pp : f.factors) CHECK(is_prime(pp.prime));
    }
    // product of two primes near 2^40
    const Integer p("1099511627791"), q("1099511628401");
    const auto f = factorize(p * q);
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0].prime == p);
    CHECK(f.factors[1].prime == q);
}

TEST_CASE("is_prime agrees with trial division") {
    for (long n = -5; n < 20000; ++n) CHECK(is_prime(Integer(n)) == trial_prime(n));
    const auto primes = primes_up_to(1000);
    CHECK(primes.size() == 168);
    CHECK(is_prime(Integer("170141183460469231731687303715884105727")));
    CHECK_FALSE(is_prime(Integer("3317044064679887385961981")));
}

TEST_CASE("omega and nu") {
    CHECK(omega(1) == 0);
    CHECK(omega(-15) == 2);
    CHECK(omega(32) == 1);
    CHECK(nu(2, Integer(-16384)) == 14);
    CHECK(nu(7, Integer(40353607)) == 9);
    CHECK(nu(2, Integer(89)) == 0);
    CHECK(nu_ext(2, 0).is_infinite());
    CHECK(nu_ext(2, 0).str() == "inf");
    CHECK(ExtNat(3) < ExtNat::infinity());
    std::mt19937 rng(3);
    for (int i = 0; i < 500; ++i) {
        const long m = 1 + rng() % 5000, n = 1 + rng() % 5000;
        Integer g;
        mpz_gcd(g.get_mpz_t(), Integer(m).get_mpz_t(), Integer(n).get_mpz_t());
        if (g == 1) CHECK(omega(Integer(m * n)) == omega(m) + omega(n));
    }
}

TEST_CASE("kronecker examples") {
    CHECK(kronecker(5, 13) == -1);
    CHECK(kronecker(4, 7) == 1);
    CHECK(kronecker(0, 3) == 0);
}

TEST_CASE("kronecker matches the definition") {
    for (long a = -60; a <= 60; ++a)
        for (long n = -60; n <= 60; ++n) CHECK(kronecker(a, n) == kronecker_by_definition(a, n));
}

TEST_CASE("kronecker is multiplicative in the numerator") {
    std::mt19937 rng(11);
    for (int i = 0; i < 1000; ++i) {
        const long a = static_cast<long>(rng() % 2001) - 1000;
        const long b = static_cast<long>(rng() % 2001) - 1000;
        const long n = static_cast<long>(rng() % 999) + 1;
        CHECK(kronecker(a, n) * kronecker(b, n) == kronecker(Integer(a) * b, n));
    }
}

TEST_CASE("quadratic reciprocity") {
    const auto primes = primes_up_to(500);
    for (auto p : primes)
        for (auto q : primes) {
            if (p == 2 || q == 2 || p == q) continue;
            const int sign = ((p - 1) * (q - 1) / 4) % 2 == 0 ? 1 : -1;
            CHECK(kronecker(p, q) * kronecker(q, p) == sign);
        }
}

TEST_CASE("divisors") {
    CHECK(divisors(15) == std::vector<Integer>{1, 3, 5, 15});
    CHECK(divisors(1) == std::vector<Integer>{1});
    CHECK(divisors(105) == std::vector<Integer>{1, 3, 5, 7, 15, 21, 35, 105});
}

TEST_CASE("squarefree helpers") {
    CHECK(is_squarefree(-30));
    CHECK_FALSE(is_squarefree(12));
    CHECK(is_squarefree(1));
    CHECK(squarefree_part(-72) == -2);
    CHECK(radical(1600) == 10);
}

TEST_CASE("factored notation") {
    CHECK(parse_factored("-2^14").value == -16384);
    CHECK(parse_factored("2^6*5^2").value == 1600);
    CHECK(parse_factored("1").value == 1);
    CHECK(parse_factored("-1").value == -1);
    CHECK(format_factored(factorize(-16384)) == "-2^14");
    CHECK(format_factored(factorize(800)) == "2^5*5^2");
    CHECK_THROWS_AS(parse_factored("2^"), Error);
    CHECK_THROWS_AS(parse_factored("4^2"), Error);
}

TEST_CASE("parse_integer") {
    CHECK(parse_integer("-12") == -12);
    CHECK(parse_integer(" 7 ") == 7);
    CHECK_THROWS_AS(parse_integer("1x"), Error);
    CHECK_THROWS_AS(parse_integer(""), Error);
}
