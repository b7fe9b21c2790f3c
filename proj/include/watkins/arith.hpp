#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace watkins {

using Integer = mpz_class;
using Rational = mpq_class;

struct PrimePower {
    Integer prime;
    unsigned exponent = 0;

    bool operator==(const PrimePower&) const = default;
};

struct Factorization {
    Integer value;
    int sign = 1;
    std::vector<PrimePower> factors; // strictly increasing primes

    Integer product() const;
    bool operator==(const Factorization&) const = default;
};

// A natural number or infinity. Valuations of zero are infinite.
class ExtNat {
public:
    ExtNat() = default;
    explicit ExtNat(long v) : value_(v) {}
    static ExtNat infinity() { return ExtNat(); }

    bool is_infinite() const { return !value_.has_value(); }
    long value() const { return *value_; }
    std::string str() const { return value_ ? std::to_string(*value_) : "inf"; }

    bool operator==(const ExtNat&) const = default;
    // inf compares greater than every finite value
    bool operator<(const ExtNat& o) const {
        if (is_infinite()) return false;
        if (o.is_infinite()) return true;
        return *value_ < *o.value_;
    }

private:
    std::optional<long> value_;
};

Integer parse_integer(const std::string& text);
std::string to_string(const Integer& n);
std::string to_string(const Rational& q);

bool is_prime(const Integer& n);
bool is_prime(std::int64_t n);

// Sieve of Eratosthenes; limit is capped at 10^7.
std::vector<std::int64_t> primes_up_to(std::int64_t limit);

Factorization factorize(const Integer& n);
unsigned omega(const Integer& n);
unsigned nu(const Integer& p, const Integer& n);
unsigned nu(std::int64_t p, const Integer& n);
ExtNat nu_ext(const Integer& p, const Integer& n);
int kronecker(const Integer& a, const Integer& n);
std::vector<Integer> divisors(const Integer& n);

bool is_squarefree(const Integer& n);
// D·s² = n with D squarefree, same sign as n.
Integer squarefree_part(const Integer& n);
// Product of the distinct primes dividing n.
Integer radical(const Integer& n);

// Parses the signed factored notation used in data files, e.g. "-2^14",
// "17", "-1", "2^6*5^2".
Factorization parse_factored(const std::string& text);
std::string format_factored(const Factorization& f);

} // namespace watkins
