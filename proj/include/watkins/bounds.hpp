#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "watkins/arith.hpp"
#include "watkins/ec_models.hpp"
#include "watkins/families.hpp"

namespace watkins {

// (q−1)(q+1−a)(q+1+a); throws InvalidArgument outside the Hasse range.
Integer V(const Integer& q, const Integer& aq);
// q² − 1
Integer U(const Integer& q);
// 2(3−a2)(3+a2)
Integer U2(const Integer& a2);

enum class PeterssonMode { Cased, Refined };

enum class CaseTag { I, II, III, IV, Remark, Refined };
std::string to_string(CaseTag tag);
CaseTag case_tag_from_string(const std::string& s);

struct PeterssonBound {
    long value = 0;
    CaseTag tag = CaseTag::I;
};

// Lower bound for the 2-adic valuation of the Petersson norm ratio of E^(D)
// over E. Throws Precondition when N = p² and p | D.
PeterssonBound petersson_val_lower(const ClassifiedCurve& curve, const TwistParameter& d, PeterssonMode mode);

long rank_upper_general(const Integer& conductor);
// For minimal y² = x³ + Ax² + Bx.
long rank_upper_ab(const Integer& a, const Integer& b);
// For E^(D) with E of prime power conductor and rational 2-torsion.
long rank_upper_twist(const ClassifiedCurve& curve, const Integer& d);
// For y² = x³ − dx.
long rank_upper_dx(const Integer& d);

Rational mdeg_val_lower(const ClassifiedCurve& curve, const TwistParameter& d, long v2_m_over_c2,
                        PeterssonMode mode = PeterssonMode::Cased);

enum class Verdict { HoldsByBounds, KnownSmallConductor, KnownPrimePower, UndecidedByBounds };
std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

inline constexpr long kSmallConductorLimit = 10000;

struct WatkinsReport {
    std::string curve;
    Integer D;
    std::string basis;  // curve the bounds were computed on
    Integer basis_D;    // twist parameter relative to basis
    long rank_upper = 0;
    long v2_m_over_c2 = 0;
    bool v2_is_bound = false;
    long petersson_term = 0;
    Rational disc_term;
    Rational mdeg_val_lower;
    Verdict verdict = Verdict::UndecidedByBounds;
    CaseTag case_tag = CaseTag::I;
    Integer twist_conductor;
    std::string note;

    bool assembly_ok() const { return mdeg_val_lower == Rational(v2_m_over_c2 + petersson_term) + disc_term; }
    bool operator==(const WatkinsReport&) const = default;
};

WatkinsReport watkins_verdict(const ClassifiedCurve& curve, const Integer& d, const CurveBundle& bundle);

struct SweepEntry {
    WatkinsReport report;
    bool in_proof_territory = false; // the closed-form inequality covers this (E, D)
};

// Every bundled curve against every squarefree D with 1 ≤ |D| ≤ max_abs_d.
std::vector<SweepEntry> watkins_sweep(const CurveBundle& bundle, long max_abs_d, unsigned threads = 1);

// Whether the closed-form argument settles (E, D) by itself: ω(D) ≥ 2 for odd
// prime power N, ω(D) ≥ 1 + ν₂(D) for 32 and 128, 2ω(D) ≥ 1 + 3ν₂(D) for 32.a3.
bool in_proof_territory(const ClassifiedCurve& curve, const Integer& d);

} // namespace watkins
