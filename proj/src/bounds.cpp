#include "watkins/bounds.hpp"

#include <utility>

#include "parallel.hpp"
#include "watkins/error.hpp"
#include "watkins/hecke.hpp"
#include "watkins/local_data.hpp"

namespace watkins {

namespace {

void check_hasse(const Integer& q, const Integer& aq) {
    if (!is_prime(q)) fail(ErrorCode::InvalidArgument, to_string(q) + " is not prime");
    if (aq * aq > 4 * q) fail(ErrorCode::InvalidArgument, "a_q = " + to_string(aq) + " violates the Hasse bound at q = " + to_string(q));
}

long nu2(const Integer& n) { return static_cast<long>(nu(2, n)); }

long a_of(const WeierstrassModel& model, const Integer& q) { return static_cast<long>(a_q(model, q.get_si())); }

bool is_remark_case(const ClassifiedCurve& curve, const Integer& d) {
    if (d <= 0 || !is_prime(d)) return false;
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), d.get_mpz_t(), 4);
    return r == 1 && d != curve.prime;
}

bool odd_family(Family f) { return f == Family::OddPrimePower || f == Family::Curve17a4; }

} // namespace

Integer V(const Integer& q, const Integer& aq) {
    check_hasse(q, aq);
    return (q - 1) * (q + 1 - aq) * (q + 1 + aq);
}

Integer U(const Integer& q) {
    if (!is_prime(q)) fail(ErrorCode::InvalidArgument, to_string(q) + " is not prime");
    return (q - 1) * (q + 1);
}

Integer U2(const Integer& a2) {
    check_hasse(2, a2);
    return 2 * (3 - a2) * (3 + a2);
}

std::string to_string(CaseTag tag) {
    switch (tag) {
    case CaseTag::I: return "I";
    case CaseTag::II: return "II";
    case CaseTag::III: return "III";
    case CaseTag::IV: return "IV";
    case CaseTag::Remark: return "remark";
    case CaseTag::Refined: return "refined";
    }
    return "?";
}

CaseTag case_tag_from_string(const std::string& s) {
    for (CaseTag t : {CaseTag::I, CaseTag::II, CaseTag::III, CaseTag::IV, CaseTag::Remark, CaseTag::Refined})
        if (to_string(t) == s) return t;
    fail(ErrorCode::Parse, "unknown case tag '" + s + "'");
}

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::HoldsByBounds: return "HOLDS_BY_BOUNDS";
    case Verdict::KnownSmallConductor: return "KNOWN_SMALL_CONDUCTOR";
    case Verdict::KnownPrimePower: return "KNOWN_PRIME_POWER";
    case Verdict::UndecidedByBounds: return "UNDECIDED_BY_BOUNDS";
    }
    return "?";
}

Verdict verdict_from_string(const std::string& s) {
    for (Verdict v : {Verdict::HoldsByBounds, Verdict::KnownSmallConductor, Verdict::KnownPrimePower,
                      Verdict::UndecidedByBounds})
        if (to_string(v) == s) return v;
    fail(ErrorCode::Parse, "unknown verdict '" + s + "'");
}

PeterssonBound petersson_val_lower(const ClassifiedCurve& curve, const TwistParameter& twist, PeterssonMode mode) {
    const Integer& d = twist.value();
    const Integer& p = curve.prime;
    if (odd_family(curve.family) && curve.exponent == 2 && nu(p, d) > 0)
        fail(ErrorCode::Precondition, curve.id + ": conductor " + to_string(p) + "^2 requires " + to_string(p) +
                                          " not to divide D");
    const long w = static_cast<long>(omega(d));
    const long v2 = nu2(d);

    if (mode == PeterssonMode::Refined) {
        long sum = 0;
        for (const auto& pp : factorize(d).factors) {
            const Integer& q = pp.prime;
            if (q == 2) {
                sum += odd_family(curve.family) ? nu2(U2(a_of(curve.model, 2))) : 1;
            } else if (q == p) {
                sum += nu2(U(p));
            } else {
                sum += nu2(V(q, a_of(curve.model, q)));
            }
        }
        return {sum, CaseTag::Refined};
    }

    switch (curve.family) {
    case Family::OddPrimePower:
        if (is_remark_case(curve, d)) return {4, CaseTag::Remark};
        return {3 * w, CaseTag::I};
    case Family::Curve17a4:
        if (is_remark_case(curve, d)) return {5, CaseTag::Remark};
        return {4 * w, CaseTag::II};
    case Family::TwoPower:
        return {3 * w - 2 * v2, CaseTag::III};
    case Family::Curve32a3:
        return {4 * w - 3 * v2, CaseTag::IV};
    }
    fail(ErrorCode::InvalidArgument, "unknown family");
}

long rank_upper_general(const Integer& n) {
    if (n < 1) fail(ErrorCode::InvalidArgument, "conductor must be positive");
    return 2 * static_cast<long>(omega(n)) - 1;
}

long rank_upper_ab(const Integer& a, const Integer& b) {
    const Integer disc = a * a - 4 * b;
    if (b == 0 || disc == 0) fail(ErrorCode::Singular, "y^2 = x^3 + Ax^2 + Bx is singular");
    return static_cast<long>(omega(disc)) + static_cast<long>(omega(b)) - 1;
}

long rank_upper_twist(const ClassifiedCurve& curve, const Integer& d) {
    if (d == 0) fail(ErrorCode::InvalidArgument, "D must be nonzero");
    const long w = static_cast<long>(omega(d));
    if (curve.family == Family::Curve32a3) return 2 * w - nu2(d);
    return 2 * w + 1 - 2 * static_cast<long>(nu(curve.prime, d));
}

long rank_upper_dx(const Integer& d) {
    if (d == 0) fail(ErrorCode::InvalidArgument, "d must be nonzero");
    return 2 * static_cast<long>(omega(d)) - nu2(d);
}

Rational mdeg_val_lower(const ClassifiedCurve& curve, const TwistParameter& d, long v2_m_over_c2, PeterssonMode mode) {
    const PeterssonBound pb = petersson_val_lower(curve, d, mode);
    Rational out = Rational(v2_m_over_c2 + pb.value) + discriminant_ratio_val2(curve.model, d);
    out.canonicalize();
    return out;
}

bool in_proof_territory(const ClassifiedCurve& curve, const Integer& d) {
    const long w = static_cast<long>(omega(d));
    const long v2 = nu2(d);
    switch (curve.family) {
    case Family::OddPrimePower:
    case Family::Curve17a4:
        return w >= 2;
    case Family::TwoPower:
        return w >= 1 + v2;
    case Family::Curve32a3:
        return 2 * w >= 1 + 3 * v2;
    }
    return false;
}

WatkinsReport watkins_verdict(const ClassifiedCurve& curve, const Integer& d_in, const CurveBundle& bundle) {
    const TwistParameter twist(d_in);
    WatkinsReport r;
    r.curve = curve.id;
    r.D = d_in;

    ClassifiedCurve basis = curve;
    Integer d = d_in;
    if (odd_family(curve.family) && curve.exponent == 2 && nu(curve.prime, d) > 0) {
        Integer rem;
        mpz_fdiv_r_ui(rem.get_mpz_t(), curve.prime.get_mpz_t(), 4);
        const Integer p_star = rem == 1 ? curve.prime : Integer(-curve.prime);
        const WeierstrassModel twisted = quadratic_twist(curve.model, TwistParameter(p_star));
        const CurveRecord* rec = bundle.find_model(twisted);
        if (!rec)
            fail(ErrorCode::Precondition, curve.id + ": twist by " + to_string(p_star) + " is not in the bundle");
        basis = classify(*rec);
        d = d / p_star;
    }
    r.basis = basis.id;
    r.basis_D = d;
    r.v2_m_over_c2 = basis.v2_m_over_c2;
    r.v2_is_bound = basis.v2_is_bound;
    r.rank_upper = rank_upper_twist(basis, d);

    const TwistParameter basis_twist(d);
    r.disc_term = discriminant_ratio_val2(basis.model, basis_twist);
    const Rational rank(r.rank_upper);

    auto assemble = [&](PeterssonMode mode) {
        const PeterssonBound pb = petersson_val_lower(basis, basis_twist, mode);
        r.petersson_term = pb.value;
        r.case_tag = pb.tag;
        r.mdeg_val_lower = Rational(r.v2_m_over_c2 + pb.value) + r.disc_term;
        r.mdeg_val_lower.canonicalize();
        return rank <= r.mdeg_val_lower;
    };

    r.twist_conductor = conductor(quadratic_twist(curve.model, twist)).value;
    if (assemble(PeterssonMode::Cased) || assemble(PeterssonMode::Refined)) {
        r.verdict = Verdict::HoldsByBounds;
        return r;
    }
    if (factorize(r.twist_conductor).factors.size() <= 1) {
        r.verdict = Verdict::KnownPrimePower;
        r.note = "twist has prime power conductor and rational 2-torsion";
    } else if (r.twist_conductor < kSmallConductorLimit) {
        r.verdict = Verdict::KnownSmallConductor;
        r.note = "conductor below 10000; relies on an external computation not repeated here";
    } else {
        r.verdict = Verdict::UndecidedByBounds;
        r.note = "bounds insufficient; this is not a counterexample";
    }
    return r;
}

std::vector<SweepEntry> watkins_sweep(const CurveBundle& bundle, long max_abs_d, unsigned threads) {
    if (max_abs_d < 1) fail(ErrorCode::InvalidArgument, "D bound must be positive");
    std::vector<std::pair<ClassifiedCurve, Integer>> jobs;
    for (const auto& rec : bundle.records()) {
        const ClassifiedCurve c = classify(rec);
        for (long d = -max_abs_d; d <= max_abs_d; ++d)
            if (d != 0 && is_squarefree(Integer(d))) jobs.emplace_back(c, Integer(d));
    }
    std::vector<SweepEntry> out(jobs.size());
    detail::parallel_for(jobs.size(), threads, [&](std::size_t i) {
        const auto& [c, d] = jobs[i];
        out[i].report = watkins_verdict(c, d, bundle);
        ClassifiedCurve basis = c;
        Integer bd = d;
        if (out[i].report.basis != c.id) {
            basis = classify(bundle.lookup(out[i].report.basis));
            bd = out[i].report.basis_D;
        }
        out[i].in_proof_territory = in_proof_territory(basis, bd);
    });
    return out;
}

} // namespace watkins
