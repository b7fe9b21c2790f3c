#include "watkins/arith.hpp"

#include <algorithm>
#include <map>
#include <cctype>

#include "watkins/error.hpp"

namespace watkins {

namespace {

constexpr std::int64_t kTrialLimit = 1000000;

const std::vector<std::int64_t>& small_primes() {
    static const std::vector<std::int64_t> primes = primes_up_to(kTrialLimit);
    return primes;
}

bool miller_rabin_round(const Integer& n, const Integer& a, const Integer& d, unsigned s) {
    Integer x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    const Integer n1 = n - 1;
    if (x == 1 || x == n1) return true;
    for (unsigned i = 1; i < s; ++i) {
        x = (x * x) % n;
        if (x == n1) return true;
    }
    return false;
}

Integer gcd(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

// Brent's variant of Pollard rho. n is odd, composite, and free of primes
// below the trial-division limit.
Integer pollard_brent(const Integer& n) {
    for (unsigned long c = 1;; ++c) {
        Integer y = 2, x, ys, q = 1, g = 1;
        const unsigned long m = 128;
        unsigned long r = 1;
        auto f = [&](const Integer& v) { return Integer((v * v + c) % n); };
        do {
            x = y;
            for (unsigned long i = 0; i < r; ++i) y = f(y);
            unsigned long k = 0;
            do {
                ys = y;
                for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    Integer diff = x - y;
                    q = (q * abs(diff)) % n;
                }
                g = gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                Integer diff = x - ys;
                g = gcd(abs(diff), n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void split_cofactor(const Integer& n, std::map<Integer, unsigned>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out[n] += 1;
        return;
    }
    Integer d = pollard_brent(n);
    split_cofactor(d, out);
    split_cofactor(Integer(n / d), out);
}

} // namespace

Integer Factorization::product() const {
    Integer p = sign;
    for (const auto& f : factors) {
        Integer pe;
        mpz_pow_ui(pe.get_mpz_t(), f.prime.get_mpz_t(), f.exponent);
        p *= pe;
    }
    return p;
}

Integer parse_integer(const std::string& text) {
    std::string t = text;
    t.erase(std::remove_if(t.begin(), t.end(), [](unsigned char ch) { return std::isspace(ch); }), t.end());
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    Integer n;
    if (t.empty() || n.set_str(t, 10) != 0) fail(ErrorCode::Parse, "not an integer: '" + text + "'");
    return n;
}

std::string to_string(const Integer& n) { return n.get_str(); }

std::string to_string(const Rational& q) {
    Rational c = q;
    c.canonicalize();
    return c.get_str();
}

bool is_prime(std::int64_t n) { return is_prime(Integer(static_cast<long>(n))); }

bool is_prime(const Integer& n) {
    if (n < 2) return false;
    static constexpr unsigned kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
    for (unsigned b : kBases) {
        if (n == b) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), b)) return false;
    }
    // The first 13 prime bases are deterministic below 3.3e24.
    static const Integer kDeterministic("3317044064679887385961981", 10);
    if (n >= kDeterministic) return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
    Integer d = n - 1;
    unsigned s = 0;
    while (mpz_even_p(d.get_mpz_t())) {
        d /= 2;
        ++s;
    }
    for (unsigned b : kBases)
        if (!miller_rabin_round(n, Integer(b), d, s)) return false;
    return true;
}

std::vector<std::int64_t> primes_up_to(std::int64_t limit) {
    if (limit > 10000000) fail(ErrorCode::OutOfRange, "prime sieve limit above 10^7");
    std::vector<std::int64_t> primes;
    if (limit < 2) return primes;
    std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
    for (std::int64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (std::int64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return primes;
}

Factorization factorize(const Integer& n) {
    if (n == 0) fail(ErrorCode::InvalidArgument, "factorize: zero has no factorization");
    Factorization result;
    result.value = n;
    result.sign = n < 0 ? -1 : 1;
    Integer m = abs(n);
    for (std::int64_t p : small_primes()) {
        if (Integer(static_cast<long>(p)) * p > m) break;
        if (!mpz_divisible_ui_p(m.get_mpz_t(), static_cast<unsigned long>(p))) continue;
        unsigned e = 0;
        while (mpz_divisible_ui_p(m.get_mpz_t(), static_cast<unsigned long>(p))) {
            mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), static_cast<unsigned long>(p));
            ++e;
        }
        result.factors.push_back({Integer(static_cast<long>(p)), e});
    }
    if (m > 1) {
        std::map<Integer, unsigned> rest;
        split_cofactor(m, rest);
        for (const auto& [p, e] : rest) result.factors.push_back({p, e});
    }
    return result;
}

unsigned omega(const Integer& n) { return static_cast<unsigned>(factorize(n).factors.size()); }

unsigned nu(const Integer& p, const Integer& n) {
    if (n == 0) fail(ErrorCode::InvalidArgument, "nu: valuation of zero is infinite");
    if (p < 2) fail(ErrorCode::InvalidArgument, "nu: p must be prime");
    Integer rest;
    return static_cast<unsigned>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

unsigned nu(std::int64_t p, const Integer& n) { return nu(Integer(static_cast<long>(p)), n); }

ExtNat nu_ext(const Integer& p, const Integer& n) {
    if (n == 0) return ExtNat::infinity();
    return ExtNat(nu(p, n));
}

int kronecker(const Integer& a, const Integer& n) { return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t()); }

std::vector<Integer> divisors(const Integer& n) {
    if (n < 1) fail(ErrorCode::InvalidArgument, "divisors: n must be positive");
    std::vector<Integer> divs{1};
    for (const auto& f : factorize(n).factors) {
        const std::size_t count = divs.size();
        Integer pk = 1;
        for (unsigned k = 1; k <= f.exponent; ++k) {
            pk *= f.prime;
            for (std::size_t i = 0; i < count; ++i) divs.push_back(divs[i] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

bool is_squarefree(const Integer& n) {
    if (n == 0) return false;
    for (const auto& f : factorize(n).factors)
        if (f.exponent > 1) return false;
    return true;
}

Integer squarefree_part(const Integer& n) {
    const Factorization f = factorize(n);
    Integer d = f.sign;
    for (const auto& pp : f.factors)
        if (pp.exponent % 2 == 1) d *= pp.prime;
    return d;
}

Integer radical(const Integer& n) {
    Integer r = 1;
    for (const auto& pp : factorize(n).factors) r *= pp.prime;
    return r;
}

Factorization parse_factored(const std::string& text) {
    std::string t;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
    if (t.empty()) fail(ErrorCode::Parse, "empty factored integer");
    int sign = 1;
    std::size_t pos = 0;
    if (t[0] == '-' || t[0] == '+') {
        sign = t[0] == '-' ? -1 : 1;
        pos = 1;
    }
    std::map<Integer, unsigned> exps;
    bool unit_only = false;
    while (pos <= t.size()) {
        const std::size_t star = std::min(t.find('*', pos), t.size());
        const std::string term = t.substr(pos, star - pos);
        const std::size_t caret = term.find('^');
        const Integer base = parse_integer(term.substr(0, caret));
        unsigned e = 1;
        if (caret != std::string::npos) {
            const Integer ee = parse_integer(term.substr(caret + 1));
            if (ee < 1 || ee > 100000) fail(ErrorCode::Parse, "bad exponent in '" + text + "'");
            e = static_cast<unsigned>(ee.get_ui());
        }
        if (base == 1) {
            unit_only = true;
        } else {
            if (!is_prime(base)) fail(ErrorCode::Parse, "non-prime base in '" + text + "'");
            exps[base] += e;
        }
        pos = star + 1;
    }
    if (unit_only && exps.empty()) {
        Factorization f;
        f.sign = sign;
        f.value = sign;
        return f;
    }
    Factorization f;
    f.sign = sign;
    for (const auto& [p, e] : exps) f.factors.push_back({p, e});
    f.value = f.product();
    return f;
}

std::string format_factored(const Factorization& f) {
    std::string out = f.sign < 0 ? "-" : "";
    if (f.factors.empty()) return out + "1";
    for (std::size_t i = 0; i < f.factors.size(); ++i) {
        if (i) out += "*";
        out += to_string(f.factors[i].prime);
        if (f.factors[i].exponent != 1) out += "^" + std::to_string(f.factors[i].exponent);
    }
    return out;
}

} // namespace watkins
