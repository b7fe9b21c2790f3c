#include "tate_internal.hpp"

#include "watkins/error.hpp"

namespace watkins {

std::string to_string(ReductionKind kind) {
    switch (kind) {
    case ReductionKind::Good: return "good";
    case ReductionKind::SplitMultiplicative: return "split-multiplicative";
    case ReductionKind::NonsplitMultiplicative: return "nonsplit-multiplicative";
    case ReductionKind::Additive: return "additive";
    }
    return "?";
}

namespace detail {

namespace {

Integer pmod(const Integer& a, const Integer& p) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
    return r;
}

Integer pinv(const Integer& a, const Integer& p) {
    Integer r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t()) == 0)
        fail(ErrorCode::InvalidArgument, "tate: non-invertible residue");
    return r;
}

bool divides(const Integer& p, const Integer& a) { return mpz_divisible_p(a.get_mpz_t(), p.get_mpz_t()) != 0; }

Integer exact(const Integer& a, const Integer& d) {
    if (!divides(d, a)) fail(ErrorCode::InvalidArgument, "tate: internal divisibility check failed");
    Integer q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
    return q;
}

unsigned val(const Integer& p, const Integer& a) { return a == 0 ? 1000000u : nu(p, a); }

// Working state: the current model plus the accumulated change of variables.
struct State {
    WeierstrassModel m;
    Transform tr;

    void step(const Integer& u, const Integer& r, const Integer& s, const Integer& t) {
        Transform next{u, r, s, t};
        m = apply(m, next);
        tr = tr.then(next);
    }
};

} // namespace

TateOutcome run_tate(const WeierstrassModel& model, const Integer& p) {
    if (!is_prime(p)) fail(ErrorCode::InvalidArgument, "tate: " + to_string(p) + " is not prime");
    invariants(model); // rejects singular input

    State st{model, Transform{}};
    const bool p2 = p == 2, p3 = p == 3;
    const Integer half = p2 ? Integer(0) : pinv(Integer(2), p);

    auto finish = [&](ReductionKind kind, std::string kodaira, long f) {
        TateOutcome out;
        out.local.p = p;
        out.local.kind = kind;
        out.local.kodaira = std::move(kodaira);
        out.local.f_p = static_cast<unsigned>(f);
        out.local.v_disc_min = val(p, discriminant(st.m));
        out.minimal_at_p = st.m;
        out.transform = st.tr;
        return out;
    };

    for (;;) {
        Invariants inv = invariants(st.m);
        const long n = static_cast<long>(nu(p, inv.disc));
        if (n == 0) return finish(ReductionKind::Good, "I0", 0);

        // Move the singular point of the reduction to (0, 0).
        Integer r, t;
        const WeierstrassModel& a = st.m;
        if (p2) {
            if (divides(p, inv.b2)) {
                r = pmod(a.a4, p);
                t = pmod(r * (1 + a.a2 + a.a4) + a.a6, p);
            } else {
                r = pmod(a.a3, p);
                t = pmod(r + a.a4, p);
            }
        } else if (p3) {
            r = divides(p, inv.b2) ? pmod(-inv.b6, p) : pmod(-inv.b2 * inv.b4, p);
            t = pmod(a.a1 * r + a.a3, p);
        } else {
            if (divides(p, inv.c4))
                r = pmod(-pinv(Integer(12), p) * inv.b2, p);
            else
                r = pmod(-pinv(Integer(12) * inv.c4, p) * (inv.c6 + inv.b2 * inv.c4), p);
            t = pmod(-half * (a.a1 * r + a.a3), p);
        }
        st.step(1, r, 0, t);
        inv = invariants(st.m);

        if (!divides(p, inv.c4)) {
            // Tangent cone y² + a1·xy − a2·x² at the node.
            bool split;
            if (p2)
                split = divides(p, st.m.a2);
            else
                split = kronecker(st.m.a1 * st.m.a1 + 4 * st.m.a2, p) == 1;
            return finish(split ? ReductionKind::SplitMultiplicative : ReductionKind::NonsplitMultiplicative,
                          "I" + std::to_string(n), 1);
        }

        if (val(p, st.m.a6) < 2) return finish(ReductionKind::Additive, "II", n);
        if (val(p, inv.b8) < 3) return finish(ReductionKind::Additive, "III", n - 1);
        if (val(p, inv.b6) < 3) return finish(ReductionKind::Additive, "IV", n - 2);

        // Now arrange p | a1, a2; p² | a3, a4; p³ | a6.
        Integer s;
        if (p2) {
            s = pmod(st.m.a2, p);
            t = 2 * pmod(exact(st.m.a6, 4), p);
        } else {
            // Left unreduced: a1 + 2s = −p·a1 and a3 + 2t = −p·a3.
            s = -st.m.a1 * half;
            t = -st.m.a3 * half;
        }
        st.step(1, 0, s, t);

        const Integer p2pow = p * p, p3pow = p2pow * p;
        const Integer b = exact(st.m.a2, p), c = exact(st.m.a4, p2pow), d = exact(st.m.a6, p3pow);
        const Integer w = 27 * d * d - b * b * c * c + 4 * b * b * b * d - 18 * b * c * d + 4 * c * c * c;
        const Integer x = 3 * c - b * b;

        if (!divides(p, w)) return finish(ReductionKind::Additive, "I0*", n - 4);

        if (!divides(p, x)) {
            // Double root of T³ + bT² + cT + d: move it to T = 0.
            if (p2)
                r = c;
            else if (p3)
                r = b * c;
            else
                r = (b * c - 9 * d) * pinv(2 * x, p);
            st.step(1, p * pmod(r, p), 0, 0);

            long ix = 3, iy = 3;
            Integer mx = p2pow, my = p2pow;
            for (;;) {
                Integer xa2 = exact(st.m.a2, p), xa3 = exact(st.m.a3, my), xa4 = exact(st.m.a4, p * mx),
                        xa6 = exact(st.m.a6, mx * my);
                if (!divides(p, xa3 * xa3 + 4 * xa6)) break;
                t = p2 ? Integer(my * pmod(xa6, p)) : Integer(my * pmod(-xa3 * half, p));
                st.step(1, 0, 0, t);
                my *= p;
                ++iy;
                xa2 = exact(st.m.a2, p);
                xa3 = exact(st.m.a3, my);
                xa4 = exact(st.m.a4, p * mx);
                xa6 = exact(st.m.a6, mx * my);
                if (!divides(p, xa4 * xa4 - 4 * xa2 * xa6)) break;
                r = p2 ? Integer(mx * pmod(xa6 * xa2, p)) : Integer(mx * pmod(-xa4 * pinv(2 * xa2, p), p));
                st.step(1, r, 0, 0);
                mx *= p;
                ++ix;
            }
            const long m = ix + iy - 5;
            return finish(ReductionKind::Additive, "I" + std::to_string(m) + "*", n - m - 4);
        }

        // Triple root: move it to T = 0.
        if (p2)
            r = b;
        else if (p3)
            r = -d;
        else
            r = -b * pinv(Integer(3), p);
        st.step(1, p * pmod(r, p), 0, 0);

        const Integer p4pow = p2pow * p2pow;
        const Integer x3 = exact(st.m.a3, p2pow), x6 = exact(st.m.a6, p4pow);
        if (!divides(p, x3 * x3 + 4 * x6)) return finish(ReductionKind::Additive, "IV*", n - 6);

        t = p2 ? pmod(x6, p) : pmod(x3 * half, p);
        st.step(1, 0, 0, -p2pow * t);

        if (val(p, st.m.a4) < 4) return finish(ReductionKind::Additive, "III*", n - 7);
        if (val(p, st.m.a6) < 6) return finish(ReductionKind::Additive, "II*", n - 8);

        // Not minimal at p: scale down and start again.
        st.step(p, 0, 0, 0);
    }
}

} // namespace detail

LocalReduction tate(const WeierstrassModel& model, const Integer& p) { return detail::run_tate(model, p).local; }

Conductor conductor(const WeierstrassModel& model) {
    const WeierstrassModel minimal = minimal_model(model).model;
    const Integer disc = invariants(minimal).disc;
    Conductor out;
    out.value = 1;
    out.factored.sign = 1;
    for (const auto& pp : factorize(disc).factors) {
        LocalReduction local = tate(minimal, pp.prime);
        if (local.f_p > 0) {
            Integer pe;
            mpz_pow_ui(pe.get_mpz_t(), pp.prime.get_mpz_t(), local.f_p);
            out.value *= pe;
            out.factored.factors.push_back({pp.prime, local.f_p});
        }
        out.local.push_back(std::move(local));
    }
    out.factored.value = out.value;
    return out;
}

Rational discriminant_ratio_val2(const WeierstrassModel& model, const TwistParameter& d) {
    const Integer two = 2;
    const long base = tate(model, two).v_disc_min;
    const long twisted = tate(quadratic_twist_raw(model, d), two).v_disc_min;
    Rational q(twisted - base, 6);
    q.canonicalize();
    return q;
}

} // namespace watkins
