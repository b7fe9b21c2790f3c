#include "watkins/hecke.hpp"

#include <map>

#include "parallel.hpp"
#include "tate_internal.hpp"
#include "watkins/error.hpp"
#include "watkins/local_data.hpp"

namespace watkins {

namespace {

std::int64_t reduce(const Integer& a, std::int64_t q) {
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(q));
    return static_cast<std::int64_t>(r.get_si());
}

std::int64_t bad_coefficient(ReductionKind kind) {
    switch (kind) {
    case ReductionKind::SplitMultiplicative: return 1;
    case ReductionKind::NonsplitMultiplicative: return -1;
    case ReductionKind::Additive: return 0;
    case ReductionKind::Good: break;
    }
    fail(ErrorCode::InvalidArgument, "bad_coefficient called at a good prime");
}

void check_prime(std::int64_t q, std::int64_t ceiling) {
    if (q > ceiling)
        fail(ErrorCode::OutOfRange, "prime " + std::to_string(q) + " exceeds the point-count ceiling " +
                                        std::to_string(ceiling));
    if (!is_prime(q)) fail(ErrorCode::InvalidArgument, std::to_string(q) + " is not prime");
}

} // namespace

std::int64_t count_points(const WeierstrassModel& m, std::int64_t q) {
    if (q == 2) {
        const std::int64_t a1 = reduce(m.a1, 2), a2 = reduce(m.a2, 2), a3 = reduce(m.a3, 2), a4 = reduce(m.a4, 2),
                           a6 = reduce(m.a6, 2);
        std::int64_t count = 1;
        for (std::int64_t x = 0; x < 2; ++x)
            for (std::int64_t y = 0; y < 2; ++y)
                if ((y * y + a1 * x * y + a3 * y - x * x * x - a2 * x * x - a4 * x - a6) % 2 == 0) ++count;
        return count;
    }
    // Completing the square: (2y + a1x + a3)² = 4x³ + b2x² + 2b4x + b6.
    const Integer b2 = m.a1 * m.a1 + 4 * m.a2, b4 = m.a1 * m.a3 + 2 * m.a4, b6 = m.a3 * m.a3 + 4 * m.a6;
    const std::int64_t c3 = 4 % q, c2 = reduce(b2, q), c1 = reduce(2 * b4, q), c0 = reduce(b6, q);

    // chi[v] = number of y with y² = v, minus one.
    std::vector<std::int8_t> chi(static_cast<std::size_t>(q), -1);
    chi[0] = 0;
    for (std::int64_t y = 1; y <= q / 2; ++y) chi[static_cast<std::size_t>(y * y % q)] = 1;

    std::int64_t count = 1 + q;
    for (std::int64_t x = 0; x < q; ++x) {
        const std::int64_t v = (((c3 * x + c2) % q * x + c1) % q * x + c0) % q;
        count += chi[static_cast<std::size_t>(v)];
    }
    return count;
}

std::int64_t a_q(const WeierstrassModel& model, std::int64_t q, std::int64_t ceiling) {
    check_prime(q, ceiling);
    const Integer qq(static_cast<long>(q));
    const Integer disc = invariants(model).disc;
    if (!mpz_divisible_p(disc.get_mpz_t(), qq.get_mpz_t())) return q + 1 - count_points(model, q);
    const detail::TateOutcome local = detail::run_tate(model, qq);
    if (local.local.kind == ReductionKind::Good) return q + 1 - count_points(local.minimal_at_p, q);
    return bad_coefficient(local.local.kind);
}

CoefficientTable::CoefficientTable(WeierstrassModel curve, std::vector<std::int64_t> coeffs)
    : curve_(std::move(curve)), a_(std::move(coeffs)) {}

std::int64_t CoefficientTable::at(std::int64_t n) const {
    if (n < 1 || n > bound())
        fail(ErrorCode::OutOfRange, "coefficient index " + std::to_string(n) + " outside 1.." + std::to_string(bound()));
    return a_[static_cast<std::size_t>(n)];
}

CoefficientTable expand(const WeierstrassModel& model, std::int64_t bound, unsigned threads) {
    if (bound < 1) fail(ErrorCode::InvalidArgument, "coefficient bound must be positive");
    if (bound > kDefaultPointCountCeiling)
        fail(ErrorCode::OutOfRange, "coefficient bound above " + std::to_string(kDefaultPointCountCeiling));
    const WeierstrassModel minimal = minimal_model(model).model;
    const Conductor cond = conductor(minimal);
    std::map<std::int64_t, ReductionKind> bad;
    for (const auto& loc : cond.local)
        if (loc.p <= bound) bad[static_cast<std::int64_t>(loc.p.get_si())] = loc.kind;

    const std::vector<std::int64_t> primes = primes_up_to(bound);
    std::vector<std::int64_t> ap(primes.size());
    detail::parallel_for(primes.size(), threads, [&](std::size_t i) {
        const std::int64_t q = primes[i];
        auto it = bad.find(q);
        ap[i] = it != bad.end() ? bad_coefficient(it->second) : q + 1 - count_points(minimal, q);
    });

    std::vector<std::int64_t> a(static_cast<std::size_t>(bound) + 1, 0);
    std::vector<std::int64_t> spf(static_cast<std::size_t>(bound) + 1, 0);
    a[1] = 1;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        const std::int64_t q = primes[i];
        for (std::int64_t k = q; k <= bound; k += q)
            if (spf[static_cast<std::size_t>(k)] == 0) spf[static_cast<std::size_t>(k)] = q;
        const bool good = !bad.count(q);
        // a(q^{k+1}) = a(q)·a(q^k) − q·a(q^{k−1}) at good q, a(q)^k at bad q.
        std::int64_t prev = 1, cur = ap[i];
        for (std::int64_t pk = q;;) {
            a[static_cast<std::size_t>(pk)] = cur;
            if (pk > bound / q) break;
            pk *= q;
            const std::int64_t next = good ? ap[i] * cur - q * prev : ap[i] * cur;
            prev = cur;
            cur = next;
        }
    }
    for (std::int64_t n = 2; n <= bound; ++n) {
        const std::int64_t q = spf[static_cast<std::size_t>(n)];
        std::int64_t pe = 1, rest = n;
        while (rest % q == 0) {
            rest /= q;
            pe *= q;
        }
        if (rest != 1) a[static_cast<std::size_t>(n)] = a[static_cast<std::size_t>(pe)] * a[static_cast<std::size_t>(rest)];
    }
    return CoefficientTable(minimal, std::move(a));
}

int gamma(const Integer& n, const Integer& d) {
    if (n < 1) fail(ErrorCode::InvalidArgument, "gamma: n must be positive");
    int value = 1;
    for (const auto& pp : factorize(n).factors) {
        const int symbol = kronecker(d, pp.prime);
        if (symbol == 0)
            fail(ErrorCode::Precondition, "gamma: (" + to_string(d) + "/" + to_string(pp.prime) + ") vanishes");
        if (pp.exponent % 2 == 1) value *= symbol;
    }
    return value;
}

CoefficientTable twist_table(const WeierstrassModel& model, const TwistParameter& d, std::int64_t bound,
                             unsigned threads) {
    return expand(quadratic_twist(model, d), bound, threads);
}

} // namespace watkins
