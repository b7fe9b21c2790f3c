#pragma once

#include <string>

#include "watkins/arith.hpp"

namespace watkins {

// y² + a1·xy + a3·y = x³ + a2·x² + a4·x + a6 over ℚ with integral coefficients.
struct WeierstrassModel {
    Integer a1, a2, a3, a4, a6;

    // Accepts "a1,a2,a3,a4,a6", optionally wrapped in [ ].
    static WeierstrassModel parse(const std::string& literal);
    std::string literal() const; // "[a1,a2,a3,a4,a6]"

    bool operator==(const WeierstrassModel&) const = default;
};

struct Invariants {
    Integer b2, b4, b6, b8, c4, c6, disc;
};

// Throws ErrorCode::Singular when the discriminant vanishes.
Invariants invariants(const WeierstrassModel& model);
Integer discriminant(const WeierstrassModel& model);

// Change of variables x = u²x' + r, y = u³y' + s·u²x' + t.
struct Transform {
    Integer u{1}, r{0}, s{0}, t{0};

    // The transformation equal to applying *this and then next.
    Transform then(const Transform& next) const;
    bool operator==(const Transform&) const = default;
};

// Throws ErrorCode::InvalidArgument when the result is not integral.
WeierstrassModel apply(const WeierstrassModel& model, const Transform& tr);

struct MinimalModel {
    WeierstrassModel model; // globally minimal, a1,a3 ∈ {0,1}, a2 ∈ {-1,0,1}
    Transform transform;    // maps the input onto model
};

MinimalModel minimal_model(const WeierstrassModel& model);

// Nonzero squarefree integer; D = 1 is the identity twist.
class TwistParameter {
public:
    explicit TwistParameter(const Integer& d);
    explicit TwistParameter(long d) : TwistParameter(Integer(d)) {}
    // Strips square factors first: twisting by D·s² is twisting by D.
    static TwistParameter normalized(const Integer& d);

    const Integer& value() const { return d_; }

private:
    Integer d_;
};

// y² = x³ − 27D²c4·x − 54D³c6, not yet minimized.
WeierstrassModel quadratic_twist_raw(const WeierstrassModel& model, const TwistParameter& d);
// Minimal model of the twist.
WeierstrassModel quadratic_twist(const WeierstrassModel& model, const TwistParameter& d);

// Looks for an integer root of x³ + b2·x² + 8b4·x + 16b6.
bool has_rational_two_torsion(const WeierstrassModel& model);

struct Signature {
    Integer p;
    ExtNat v_c4, v_c6, v_disc;
    bool minimized = false; // the supplied model was not minimal and was reduced first

    std::string str() const; // "(4, inf, 6)"
};

Signature signature(const WeierstrassModel& model, const Integer& p);

} // namespace watkins
