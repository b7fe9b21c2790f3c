#include <doctest.h>

#include <random>

#include "watkins/ec_models.hpp"
#include "watkins/error.hpp"
#include "watkins/families.hpp"
#include "watkins/local_data.hpp"

using namespace watkins;

namespace {

WeierstrassModel M(long a1, long a2, long a3, long a4, long a6) { return {a1, a2, a3, a4, a6}; }

} // namespace

TEST_CASE("local data examples") {
    auto l = tate(M(0, 0, 0, -1, 0), 2);
    CHECK(l.kind == ReductionKind::Additive);
    CHECK(l.f_p == 5);
    l = tate(M(1, -1, 1, -1, 0), 17);
    CHECK((l.kind == ReductionKind::SplitMultiplicative || l.kind == ReductionKind::NonsplitMultiplicative));
    CHECK(l.f_p == 1);
    CHECK(l.kodaira == "I1");
    l = tate(M(0, 0, 0, -25, 0), 5);
    CHECK(l.kind == ReductionKind::Additive);
    CHECK(l.f_p == 2);
    l = tate(M(1, -1, 0, -1822, 30393), 7);
    CHECK(l.kodaira == "III*");
    CHECK(l.f_p == 2);
    l = tate(M(0, 0, 0, -1, 0), 3);
    CHECK(l.kind == ReductionKind::Good);
    CHECK(l.f_p == 0);
}

TEST_CASE("conductors") {
    CHECK(conductor(M(0, 0, 0, -1, 0)).value == 32);
    CHECK(conductor(M(1, -1, 0, -2, -1)).value == 49);
    const auto n = conductor(M(0, 0, 0, -25, 0));
    CHECK(n.value == 800);
    CHECK(format_factored(n.factored) == "2^5*5^2");
    CHECK(conductor(M(0, -1, 1, -10, -20)).value == 11);
    CHECK(conductor(M(0, 0, 1, -1, 0)).value == 37);
    CHECK(conductor(M(1, 1, 0, -1, 0)).value == 89);
    CHECK(conductor(M(1, 1, 0, 4, 5)).value == 89);
}

TEST_CASE("split and nonsplit multiplicative reduction") {
    // 11a1 is split at 11, 37a1 nonsplit at 37, 14a1 nonsplit at 2 and split at 7
    CHECK(tate(M(0, -1, 1, -10, -20), 11).kind == ReductionKind::SplitMultiplicative);
    CHECK(tate(M(0, 0, 1, -1, 0), 37).kind == ReductionKind::NonsplitMultiplicative);
    CHECK(tate(M(1, 0, 1, 4, -6), 2).kind == ReductionKind::NonsplitMultiplicative);
    CHECK(tate(M(1, 0, 1, 4, -6), 7).kind == ReductionKind::SplitMultiplicative);
}

TEST_CASE("bundled conductors match their labels") {
    for (const auto& r : CurveBundle::bundled().records()) CHECK(conductor(r.model).value == r.label_conductor());
}

TEST_CASE("tate is invariant under integral changes of model") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<long> small(-6, 6);
    const auto bundle = CurveBundle::bundled();
    for (int i = 0; i < 200; ++i) {
        const auto& rec = bundle.records()[rng() % bundle.records().size()];
        const Transform tr{1, small(rng), small(rng), small(rng)};
        const WeierstrassModel moved = apply(rec.model, tr);
        const Conductor a = conductor(rec.model), b = conductor(moved);
        CHECK(a.value == b.value);
        REQUIRE(a.local.size() == b.local.size());
        for (std::size_t k = 0; k < a.local.size(); ++k) {
            CHECK(a.local[k].kodaira == b.local[k].kodaira);
            CHECK(a.local[k].kind == b.local[k].kind);
        }
        // inverse scaling by u = 2: the model becomes non-minimal at 2
        const Invariants inv = invariants(rec.model);
        const WeierstrassModel scaled{0, 0, 0, Integer(-27 * inv.c4 * 16), Integer(-54 * inv.c6 * 64)};
        CHECK(conductor(scaled).value == a.value);
    }
}

TEST_CASE("discriminant ratio examples") {
    const WeierstrassModel e17 = M(1, -1, 1, -1, 0);
    CHECK(discriminant_ratio_val2(e17, TwistParameter(5L)) == 0);
    CHECK(discriminant_ratio_val2(e17, TwistParameter(-1L)) == 2);
    CHECK(discriminant_ratio_val2(e17, TwistParameter(2L)) == 3);
    CHECK(discriminant_ratio_val2(M(0, 0, 0, -1, 0), TwistParameter(2L)) == 1);
}

TEST_CASE("discriminant ratio follows the odd discriminant law") {
    for (const auto& r : CurveBundle::bundled().records()) {
        if (r.disc.value % 2 == 0) continue;
        for (long d = -300; d <= 300; ++d) {
            if (d == 0 || !is_squarefree(d)) continue;
            const long m4 = ((d % 4) + 4) % 4;
            const Rational expected = d % 2 == 0 ? 3 : (m4 == 1 ? 0 : 2);
            CHECK(discriminant_ratio_val2(r.model, TwistParameter(d)) == expected);
        }
    }
}

TEST_CASE("discriminant ratio lower bound for conductors 32 and 128") {
    for (const auto& r : CurveBundle::bundled().records()) {
        if (r.disc.value % 2 != 0) continue;
        for (long d = -100; d <= 100; ++d) {
            if (d == 0 || !is_squarefree(d)) continue;
            const long v2 = d % 2 == 0 ? 1 : 0;
            CHECK(discriminant_ratio_val2(r.model, TwistParameter(d)) >= Rational(-v2));
        }
    }
}
