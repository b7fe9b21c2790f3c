#pragma once

#include <cstdint>
#include <vector>

#include "watkins/arith.hpp"
#include "watkins/ec_models.hpp"

namespace watkins {

inline constexpr std::int64_t kDefaultPointCountCeiling = 1000000;

// Trace of Frobenius at q for good reduction, ±1 or 0 at bad q by the
// reduction kind. Any integral model is accepted; it is minimized at q.
std::int64_t a_q(const WeierstrassModel& model, std::int64_t q,
                 std::int64_t ceiling = kDefaultPointCountCeiling);

// Number of projective points on the reduction of a model with good
// reduction at q.
std::int64_t count_points(const WeierstrassModel& model, std::int64_t q);

// Coefficients a(1..B) of the newform attached to a curve.
class CoefficientTable {
public:
    CoefficientTable(WeierstrassModel curve, std::vector<std::int64_t> coeffs);

    const WeierstrassModel& curve() const { return curve_; }
    std::int64_t bound() const { return static_cast<std::int64_t>(a_.size()) - 1; }
    // 1 ≤ n ≤ bound(), otherwise ErrorCode::OutOfRange
    std::int64_t at(std::int64_t n) const;
    std::int64_t operator[](std::int64_t n) const { return a_[static_cast<std::size_t>(n)]; }

    bool operator==(const CoefficientTable&) const = default;

private:
    WeierstrassModel curve_;
    std::vector<std::int64_t> a_; // a_[0] unused
};

// threads = 0 picks the hardware concurrency; output is independent of it.
CoefficientTable expand(const WeierstrassModel& model, std::int64_t bound, unsigned threads = 1);

// ∏ (D/q_i)^{α_i} over n = ∏ q_i^{α_i}; throws Precondition if a symbol vanishes.
int gamma(const Integer& n, const Integer& d);

// Expansion of the twisted curve itself (no use of the character relation).
CoefficientTable twist_table(const WeierstrassModel& model, const TwistParameter& d, std::int64_t bound,
                             unsigned threads = 1);

} // namespace watkins
