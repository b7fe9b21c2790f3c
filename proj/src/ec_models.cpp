#include "watkins/ec_models.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <vector>

#include "tate_internal.hpp"
#include "watkins/error.hpp"

namespace watkins {

namespace {

Integer pow_int(const Integer& base, unsigned e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

Integer divide_exact(const Integer& num, const Integer& den) {
    if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()))
        fail(ErrorCode::InvalidArgument, "change of variables does not give an integral model");
    Integer q;
    mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

// Rounds to the nearest integer, ties towards -inf; den > 0.
Integer round_div(const Integer& num, const Integer& den) {
    Integer q;
    Integer twice = 2 * num + den;
    Integer den2 = 2 * den;
    mpz_fdiv_q(q.get_mpz_t(), twice.get_mpz_t(), den2.get_mpz_t());
    return q;
}

Integer mod_floor(const Integer& a, long m) {
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(m));
    return r;
}

} // namespace

WeierstrassModel WeierstrassModel::parse(const std::string& literal) {
    std::string t;
    for (char ch : literal)
        if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
    if (!t.empty() && t.front() == '[') {
        if (t.back() != ']') fail(ErrorCode::Parse, "unbalanced bracket in curve literal '" + literal + "'");
        t = t.substr(1, t.size() - 2);
    }
    std::vector<Integer> coeffs;
    std::stringstream ss(t);
    std::string item;
    while (std::getline(ss, item, ',')) coeffs.push_back(parse_integer(item));
    if (coeffs.size() != 5 || (!t.empty() && t.back() == ','))
        fail(ErrorCode::Parse, "curve literal needs five comma-separated integers: '" + literal + "'");
    return {coeffs[0], coeffs[1], coeffs[2], coeffs[3], coeffs[4]};
}

std::string WeierstrassModel::literal() const {
    return "[" + to_string(a1) + "," + to_string(a2) + "," + to_string(a3) + "," + to_string(a4) + "," +
           to_string(a6) + "]";
}

Integer discriminant(const WeierstrassModel& m) {
    const Integer b2 = m.a1 * m.a1 + 4 * m.a2;
    const Integer b4 = m.a1 * m.a3 + 2 * m.a4;
    const Integer b6 = m.a3 * m.a3 + 4 * m.a6;
    const Integer b8 = m.a1 * m.a1 * m.a6 + 4 * m.a2 * m.a6 - m.a1 * m.a3 * m.a4 + m.a2 * m.a3 * m.a3 - m.a4 * m.a4;
    return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
}

Invariants invariants(const WeierstrassModel& m) {
    Invariants inv;
    inv.b2 = m.a1 * m.a1 + 4 * m.a2;
    inv.b4 = m.a1 * m.a3 + 2 * m.a4;
    inv.b6 = m.a3 * m.a3 + 4 * m.a6;
    inv.b8 = m.a1 * m.a1 * m.a6 + 4 * m.a2 * m.a6 - m.a1 * m.a3 * m.a4 + m.a2 * m.a3 * m.a3 - m.a4 * m.a4;
    inv.c4 = inv.b2 * inv.b2 - 24 * inv.b4;
    inv.c6 = -inv.b2 * inv.b2 * inv.b2 + 36 * inv.b2 * inv.b4 - 216 * inv.b6;
    inv.disc = -inv.b2 * inv.b2 * inv.b8 - 8 * inv.b4 * inv.b4 * inv.b4 - 27 * inv.b6 * inv.b6 +
               9 * inv.b2 * inv.b4 * inv.b6;
    if (inv.disc == 0) fail(ErrorCode::Singular, "singular model " + m.literal());
    return inv;
}

Transform Transform::then(const Transform& next) const {
    Transform out;
    out.u = u * next.u;
    out.r = r + u * u * next.r;
    out.s = s + u * next.s;
    out.t = t + u * u * s * next.r + u * u * u * next.t;
    return out;
}

WeierstrassModel apply(const WeierstrassModel& m, const Transform& tr) {
    const Integer &u = tr.u, &r = tr.r, &s = tr.s, &t = tr.t;
    if (u == 0) fail(ErrorCode::InvalidArgument, "transformation with u = 0");
    WeierstrassModel out;
    out.a1 = divide_exact(m.a1 + 2 * s, u);
    out.a2 = divide_exact(m.a2 - s * m.a1 + 3 * r - s * s, pow_int(u, 2));
    out.a3 = divide_exact(m.a3 + r * m.a1 + 2 * t, pow_int(u, 3));
    out.a4 = divide_exact(m.a4 - s * m.a3 + 2 * r * m.a2 - (t + r * s) * m.a1 + 3 * r * r - 2 * s * t, pow_int(u, 4));
    out.a6 = divide_exact(m.a6 + r * m.a4 + r * r * m.a2 + r * r * r - t * m.a3 - t * t - r * t * m.a1, pow_int(u, 6));
    return out;
}

MinimalModel minimal_model(const WeierstrassModel& model) {
    const Invariants inv = invariants(model);
    MinimalModel result{model, Transform{}};
    for (const auto& pp : factorize(inv.disc).factors) {
        if (pp.exponent < 12) continue;
        const detail::TateOutcome local = detail::run_tate(result.model, pp.prime);
        if (local.transform.u == 1) continue;
        result.model = local.minimal_at_p;
        result.transform = result.transform.then(local.transform);
    }

    // Reduced form: a1, a3 ∈ {0,1}, a2 ∈ {-1,0,1}.
    WeierstrassModel& m = result.model;
    Transform step;
    step.s = (mod_floor(m.a1, 2) - m.a1) / 2;
    m = apply(m, step);
    result.transform = result.transform.then(step);

    step = Transform{};
    step.r = -round_div(m.a2, Integer(3));
    m = apply(m, step);
    result.transform = result.transform.then(step);

    step = Transform{};
    step.t = (mod_floor(m.a3, 2) - m.a3) / 2;
    m = apply(m, step);
    result.transform = result.transform.then(step);
    return result;
}

TwistParameter::TwistParameter(const Integer& d) : d_(d) {
    if (d == 0) fail(ErrorCode::InvalidArgument, "twist parameter must be nonzero");
    if (!is_squarefree(d)) fail(ErrorCode::InvalidArgument, "twist parameter " + to_string(d) + " is not squarefree");
}

TwistParameter TwistParameter::normalized(const Integer& d) {
    if (d == 0) fail(ErrorCode::InvalidArgument, "twist parameter must be nonzero");
    return TwistParameter(squarefree_part(d));
}

WeierstrassModel quadratic_twist_raw(const WeierstrassModel& model, const TwistParameter& d) {
    const Invariants inv = invariants(model);
    const Integer& D = d.value();
    return {0, 0, 0, -27 * D * D * inv.c4, -54 * D * D * D * inv.c6};
}

WeierstrassModel quadratic_twist(const WeierstrassModel& model, const TwistParameter& d) {
    return minimal_model(quadratic_twist_raw(model, d)).model;
}

bool has_rational_two_torsion(const WeierstrassModel& model) {
    const Invariants inv = invariants(model);
    // 2-torsion x-coordinates x satisfy 4x³ + b2x² + 2b4x + b6 = 0; X = 4x is integral.
    const Integer c2 = inv.b2, c1 = 8 * inv.b4, c0 = 16 * inv.b6;
    if (c0 == 0) return true;
    auto root = [&](const Integer& x) { return ((x + c2) * x + c1) * x + c0 == 0; };
    for (const Integer& dv : divisors(abs(c0)))
        if (root(dv) || root(Integer(-dv))) return true;
    return false;
}

std::string Signature::str() const { return "(" + v_c4.str() + ", " + v_c6.str() + ", " + v_disc.str() + ")"; }

Signature signature(const WeierstrassModel& model, const Integer& p) {
    if (!is_prime(p)) fail(ErrorCode::InvalidArgument, "signature: " + to_string(p) + " is not prime");
    const MinimalModel mm = minimal_model(model);
    const Invariants inv = invariants(mm.model);
    Signature sig;
    sig.p = p;
    sig.v_c4 = nu_ext(p, inv.c4);
    sig.v_c6 = nu_ext(p, inv.c6);
    sig.v_disc = nu_ext(p, inv.disc);
    sig.minimized = mm.transform.u != 1;
    return sig;
}

} // namespace watkins
