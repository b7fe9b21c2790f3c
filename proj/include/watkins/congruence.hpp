#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "watkins/arith.hpp"
#include "watkins/ec_models.hpp"
#include "watkins/hecke.hpp"

namespace watkins {

inline constexpr unsigned kMaxFamilyOmega = 4;

// y² = x³ − d·D²·x
WeierstrassModel dx_curve(const Integer& d, const Integer& D = Integer(1));

// Coefficient tables of f^(D) for every positive D | d, with
// S = Σ_{D|d} (−1)^ω(D) f^(D).
class TwistFamily {
public:
    // d odd squarefree ≥ 3 with ω(d) ≤ max_omega.
    TwistFamily(const Integer& d, std::int64_t bound, unsigned threads = 1, unsigned max_omega = kMaxFamilyOmega);

    const Integer& d() const { return d_; }
    unsigned m() const { return m_; }
    std::int64_t bound() const { return bound_; }
    const std::vector<Integer>& divisors() const { return divisors_; }
    // Table of f^(D); D must be a positive divisor of d.
    const CoefficientTable& table(const Integer& D) const;
    const CoefficientTable& base() const { return tables_.front(); }

    // a_n(S); throws OutOfRange for n outside [1, bound].
    Integer alternating_sum(std::int64_t n) const;

private:
    Integer d_;
    unsigned m_ = 0;
    std::int64_t bound_ = 0;
    std::vector<Integer> divisors_; // ascending, divisors_[0] = 1
    std::vector<CoefficientTable> tables_;
};

struct ClaimResult {
    std::int64_t n = 0;
    std::int64_t n1 = 1, n2 = 1; // n1 is the d-part of n
    bool all_gamma_minus_one = false;
    Integer expected; // 2^m·a_n(f) or 0
    Integer actual;   // a_n(S)
    bool ok = false;
};

ClaimResult claim_check(const TwistFamily& family, std::int64_t n);

// For p | d with γ_{n2}(p) = −1:
// a_n(S) = 2·a_{n1}(f)·Σ_{D|(d/p)} (−1)^ω(D)·a_{n2}(f^(D)).
// Returns false when that identity fails; throws Precondition when it does not apply.
bool telescoping_check(const TwistFamily& family, std::int64_t n, const Integer& p);

struct TightWitness {
    std::int64_t n = 0;
    Integer value;
    long val2 = 0;
    bool operator==(const TightWitness&) const = default;
};

struct ClaimViolation {
    std::int64_t n = 0;
    Integer expected, actual;
    bool operator==(const ClaimViolation&) const = default;
};

inline constexpr std::size_t kMaxReportedWitnesses = 16;

struct CongruenceReport {
    Integer d;
    unsigned m = 0;
    unsigned epsilon = 0;
    unsigned bound = 0; // m + ε = 2⌊(m+1)/2⌋ + 1
    std::int64_t B = 0;
    ExtNat min_observed_val = ExtNat::infinity();
    std::size_t tight_count = 0;
    std::vector<TightWitness> tight_witnesses; // first kMaxReportedWitnesses
    std::vector<std::int64_t> valuation_failures;
    std::vector<ClaimViolation> claim_violations;
    bool claim_ok = true;
    bool conductor_family_ok = true;

    bool passed() const { return valuation_failures.empty() && claim_ok && conductor_family_ok; }
    bool operator==(const CongruenceReport&) const = default;
};

unsigned congruence_epsilon(unsigned m);
unsigned congruence_bound(unsigned m);

// d odd squarefree ≥ 3, B ≥ 100.
CongruenceReport verify_theorem(const Integer& d, std::int64_t B, unsigned threads = 1);

struct CongruenceLemmaResult {
    Integer d;
    std::int64_t q = 0;
    unsigned k = 0;
    int symbol = 0;           // (d/q)
    Integer a_q_f, a_qk_f;    // y² = x³ − dx
    Integer a_q_g;            // y² = x³ − x
    unsigned modulus = 0;     // 2 or 4
    bool congruence_ok = false;
    bool identity_checked = false; // (d/q) = −1 and q ≡ 1 mod 4
    bool identity_ok = true;
    bool ok() const { return congruence_ok && identity_ok; }
};

// q a prime not dividing 2d, k odd.
CongruenceLemmaResult congruence_lemma_check(const Integer& d, std::int64_t q, unsigned k = 1);

struct ConductorFamilyResult {
    Integer d;
    std::vector<std::pair<Integer, Integer>> conductors; // (D, N^(D))
    bool ok = false;
};

ConductorFamilyResult conductor_family_check(const Integer& d);

struct CorollaryResult {
    Integer p;
    long rank_upper_p = 0;  // y² = x³ − px
    long rank_upper_p3 = 0; // y² = x³ − p³x
    unsigned congruence_bound = 0;
    bool theorem_verified = false; // verify_theorem(p, B) passed; false when B = 0
    bool ok = false;
};

// p odd prime. B > 0 additionally runs verify_theorem(p, B).
CorollaryResult corollary_check(const Integer& p, std::int64_t B = 0);

} // namespace watkins
