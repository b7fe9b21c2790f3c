#pragma once

#include <string>
#include <vector>

#include "watkins/arith.hpp"
#include "watkins/ec_models.hpp"

namespace watkins {

enum class ReductionKind { Good, SplitMultiplicative, NonsplitMultiplicative, Additive };

std::string to_string(ReductionKind kind);

struct LocalReduction {
    Integer p;
    ReductionKind kind = ReductionKind::Good;
    std::string kodaira;     // "I0", "I3", "III*", "I2*", ...
    unsigned f_p = 0;        // conductor exponent
    unsigned v_disc_min = 0; // valuation of the p-minimal discriminant
};

// Tate's algorithm at p. Works on any integral model; minimizes at p first.
LocalReduction tate(const WeierstrassModel& model, const Integer& p);

struct Conductor {
    Integer value;
    Factorization factored;
    std::vector<LocalReduction> local; // one per bad prime, ascending
};

Conductor conductor(const WeierstrassModel& model);

// One sixth of ν₂(Δ_{E^(D)}) − ν₂(Δ_E) for the minimal discriminants.
Rational discriminant_ratio_val2(const WeierstrassModel& model, const TwistParameter& d);

} // namespace watkins
