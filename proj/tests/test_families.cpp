#include <doctest.h>

#include <cstdlib>
#include <fstream>

#include "watkins/error.hpp"
#include "watkins/families.hpp"
#include "watkins/hecke.hpp"
#include "watkins/local_data.hpp"

using namespace watkins;

namespace {

WeierstrassModel M(long a1, long a2, long a3, long a4, long a6) { return {a1, a2, a3, a4, a6}; }

std::string error_of(const std::string& csv) {
    try {
        CurveBundle::parse(csv, "test.csv");
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST_CASE("bundled records") {
    const auto bundle = CurveBundle::bundled();
    CHECK(bundle.records().size() == 20);
    const auto& a3 = bundle.lookup("32.a3");
    CHECK(a3.model == M(0, 0, 0, -1, 0));
    CHECK(a3.m_E == 2);
    CHECK(a3.c_E == 2);
    CHECK(a3.disc.value == 64);
    const auto& a1 = bundle.lookup("49.a1");
    CHECK(a1.model == M(1, -1, 0, -1822, 30393));
    CHECK(a1.m_E == 14);
    CHECK(format_factored(a1.disc) == "7^9");
    const auto& b1 = bundle.lookup("128.b1");
    CHECK(b1.model == M(0, 1, 0, -2, -2));
    CHECK(b1.m_E == 16);
    CHECK(b1.c_E == 2);
    CHECK(format_factored(b1.disc) == "2^7");
    CHECK_THROWS_AS(bundle.lookup("11.a1"), Error);
}

TEST_CASE("bundle load errors") {
    const std::string header = "label,a1,a2,a3,a4,a6,mE,cE,disc\n";
    std::string msg = error_of(header + "32.a3,0,0,0,-1,0,2,2,2^7\n");
    CHECK(msg.find("32.a3") != std::string::npos);
    CHECK(msg.find("test.csv:2") != std::string::npos);
    msg = error_of(header + "# comment\n33.a3,0,0,0,-1,0,2,2,2^6\n");
    CHECK(msg.find("33.a3") != std::string::npos);
    msg = error_of(header + "32.a3,0,0,0,-1,0,2,2\n");
    CHECK(msg.find("test.csv:2") != std::string::npos);
    msg = error_of(header + "32.a3,0,0,0,x,0,2,2,2^6\n");
    CHECK(msg.find("test.csv:2") != std::string::npos);
    msg = error_of(header + "32.a3,0,0,0,-1,0,2,2,2^6\n32.a3,0,0,0,-1,0,2,2,2^6\n");
    CHECK(msg.find("duplicate") != std::string::npos);
    CHECK(error_of(header + "32.a3,0,0,0,-1,0,2,2,2^6\n").empty());
}

TEST_CASE("WATKINS_DATA overrides the bundle") {
    const std::string path = "watkins_test_override.csv";
    {
        std::ofstream out(path);
        out << "label,a1,a2,a3,a4,a6,mE,cE,disc\n32.a3,0,0,0,-1,0,2,2,2^6\n";
    }
    setenv("WATKINS_DATA", path.c_str(), 1);
    const auto b = CurveBundle::load_default();
    CHECK(b.records().size() == 1);
    CHECK(b.source() == path);
    setenv("WATKINS_DATA", "does-not-exist.csv", 1);
    CHECK_THROWS_AS(CurveBundle::load_default(), Error);
    unsetenv("WATKINS_DATA");
    CHECK(CurveBundle::load_default().records().size() == 20);
    std::remove(path.c_str());
    if (const char* dir = std::getenv("WATKINS_TEST_DATA_DIR"))
        CHECK(CurveBundle::load_file(std::string(dir) + "/curves.csv").records().size() == 20);
}

TEST_CASE("Setzer pairs") {
    auto pair = setzer_pair(89);
    CHECK(pair.u == 5);
    CHECK(pair.curve_a1 == M(1, 1, 0, -1, 0));
    CHECK(pair.curve_a2 == M(1, 1, 0, 4, 5));
    CHECK(discriminant(pair.curve_a2) == -89 * 89);
    pair = setzer_pair(73);
    CHECK(pair.u == -3);
    CHECK(pair.curve_a1 == M(1, -1, 0, -1, 0));
    CHECK(discriminant(pair.curve_a1) == 73);
    pair = setzer_pair(113);
    CHECK(pair.u == -7);
    CHECK(pair.curve_a1 == M(1, -2, 0, -1, 0));
    CHECK(discriminant(pair.curve_a1) == 113);
    CHECK_THROWS_AS(setzer_pair(17), Error);
    CHECK_THROWS_AS(setzer_pair(97), Error);
    CHECK_THROWS_AS(setzer_pair(91), Error);
}

TEST_CASE("Setzer pairs below 10^4") {
    const auto primes = setzer_primes(10000);
    CHECK(primes.front() == 73);
    CHECK(primes.size() == 19);
    for (const auto& p : primes) {
        const auto pair = setzer_pair(p);
        CHECK(discriminant(pair.curve_a1) == p);
        CHECK(discriminant(pair.curve_a2) == -p * p);
        CHECK(conductor(pair.curve_a1).value == p);
        CHECK(conductor(pair.curve_a2).value == p);
        CHECK(has_rational_two_torsion(pair.curve_a1));
        CHECK(has_rational_two_torsion(pair.curve_a2));
    }
}

TEST_CASE("isogenous Setzer curves have equal coefficients") {
    for (const auto& p : setzer_primes(3000)) {
        const auto pair = setzer_pair(p);
        const auto t1 = expand(pair.curve_a1, 200), t2 = expand(pair.curve_a2, 200);
        for (auto q : primes_up_to(200)) {
            if (q == p) continue;
            CHECK((t1[q] - t2[q]) % 2 == 0);
            CHECK(t1[q] == t2[q]);
        }
    }
}

TEST_CASE("classification") {
    const auto bundle = CurveBundle::bundled();
    auto c = classify(bundle.lookup("17.a4"));
    CHECK(c.family == Family::Curve17a4);
    CHECK(c.v2_m_over_c2 == -2);
    c = classify(bundle.lookup("32.a3"));
    CHECK(c.family == Family::Curve32a3);
    CHECK(c.v2_m_over_c2 == -1);
    c = classify(bundle.lookup("49.a2"));
    CHECK(c.family == Family::OddPrimePower);
    CHECK(c.prime == 7);
    CHECK(c.exponent == 2);
    c = classify(bundle.lookup("128.b1"));
    CHECK(c.family == Family::TwoPower);
    CHECK(c.v2_m_over_c2 == 2);
    c = classify_model(M(1, 1, 0, 4, 5), bundle);
    CHECK(c.id == "89.a2");
    CHECK(c.v2_is_bound);
    CHECK(c.v2_m_over_c2 == -1);
    c = classify_model(M(1, -2, 0, -1, 0), bundle);
    CHECK(c.id == "113.a1");
    c = classify_model(M(0, 0, 0, -16, 0), bundle);
    CHECK(c.id == "32.a3");
    CHECK_THROWS_AS(classify_model(M(0, -1, 1, -10, -20), bundle), Error);
}

TEST_CASE("table verification") {
    const auto report = verify_tables(CurveBundle::bundled());
    CHECK(report.setzer_primes_checked == 19);
    CHECK(report.unchecked.size() == 40);
    for (const auto& c : report.checks) {
        if (c.group == "discriminant" || c.group == "conductor" || c.group == "two-torsion" ||
            c.group.rfind("setzer", 0) == 0)
            CHECK_MESSAGE(c.ok, c.group << " " << c.subject);
        if (c.subject == "32.a4" && c.group == "signature") CHECK(c.actual == "(6, inf, 12)");
        if (c.subject == "128.c1" && c.group == "c4-c6") CHECK(c.expected == "(448,3392)");
    }
}
