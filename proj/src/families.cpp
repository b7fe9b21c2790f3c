#include "watkins/families.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "bundled_curves.hpp"
#include "watkins/error.hpp"
#include "watkins/local_data.hpp"

namespace watkins {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::stringstream ss(line);
    while (std::getline(ss, item, sep)) out.push_back(item);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string str_of(bool b) { return b ? "true" : "false"; }

} // namespace

Integer CurveRecord::label_conductor() const {
    const auto dot = label.find('.');
    if (dot == std::string::npos || dot == 0) fail(ErrorCode::Parse, "label '" + label + "' has no conductor prefix");
    return parse_integer(label.substr(0, dot));
}

CurveBundle CurveBundle::parse(std::string_view csv, const std::string& source) {
    CurveBundle bundle;
    bundle.source_ = source;
    std::stringstream in{std::string(csv)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#' || line.rfind("label", 0) == 0) continue;
        const auto cols = split(line, ',');
        const std::string where = source + ":" + std::to_string(lineno);
        if (cols.size() != 9)
            fail(ErrorCode::Parse, where + ": expected 9 columns, found " + std::to_string(cols.size()));
        CurveRecord rec;
        try {
            rec.label = trim(cols[0]);
            rec.model = {parse_integer(cols[1]), parse_integer(cols[2]), parse_integer(cols[3]), parse_integer(cols[4]),
                         parse_integer(cols[5])};
            rec.m_E = parse_integer(cols[6]);
            rec.c_E = parse_integer(cols[7]);
            rec.disc = parse_factored(cols[8]);
        } catch (const Error& e) {
            fail(ErrorCode::Parse, where + ": " + e.what());
        }
        if (rec.label.empty()) fail(ErrorCode::Parse, where + ": empty label");
        if (rec.m_E < 1 || rec.c_E < 1) fail(ErrorCode::Parse, where + ": m_E and c_E must be positive");
        const Integer disc = discriminant(rec.model);
        if (disc != rec.disc.value)
            fail(ErrorCode::InvalidArgument, where + ": " + rec.label + ": stored discriminant " +
                                                 format_factored(rec.disc) + " but the model has " +
                                                 (disc == 0 ? std::string("0") : format_factored(factorize(disc))));
        const Integer n = conductor(rec.model).value;
        if (n != rec.label_conductor())
            fail(ErrorCode::InvalidArgument,
                 where + ": " + rec.label + ": model has conductor " + to_string(n) + ", label says otherwise");
        for (const auto& other : bundle.records_)
            if (other.label == rec.label) fail(ErrorCode::InvalidArgument, where + ": duplicate label " + rec.label);
        bundle.records_.push_back(std::move(rec));
    }
    return bundle;
}

CurveBundle CurveBundle::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::Io, "cannot open curve data '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), path);
}

const CurveBundle& CurveBundle::bundled() {
    static const CurveBundle bundle = parse(detail::kBundledCurvesCsv, "<bundled curves.csv>");
    return bundle;
}

CurveBundle CurveBundle::load_default() {
    if (const char* path = std::getenv("WATKINS_DATA"); path && *path) return load_file(path);
    return bundled();
}

const CurveRecord& CurveBundle::lookup(const std::string& label) const {
    for (const auto& r : records_)
        if (r.label == label) return r;
    fail(ErrorCode::UnknownLabel, "unknown curve label '" + label + "'");
}

const CurveRecord* CurveBundle::find_model(const WeierstrassModel& model) const {
    const WeierstrassModel target = minimal_model(model).model;
    for (const auto& r : records_)
        if (minimal_model(r.model).model == target) return &r;
    return nullptr;
}

SetzerPair setzer_pair(const Integer& p) {
    if (p == 17) fail(ErrorCode::InvalidArgument, "p = 17 has four curves; use the bundled 17.* records");
    if (!is_prime(p)) fail(ErrorCode::InvalidArgument, to_string(p) + " is not prime");
    const Integer sq = p - 64;
    if (sq < 0 || !mpz_perfect_square_p(sq.get_mpz_t()))
        fail(ErrorCode::InvalidArgument, to_string(p) + " is not of the form u^2 + 64");
    Integer u;
    mpz_sqrt(u.get_mpz_t(), sq.get_mpz_t());
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), u.get_mpz_t(), 4);
    if (r != 1) u = -u;
    const Integer k = (u - 1) / 4;
    return {p, u, {1, k, 0, -1, 0}, {1, k, 0, 4, u}};
}

std::vector<Integer> setzer_primes(const Integer& limit) {
    std::vector<Integer> out;
    for (Integer u = 1; u * u + 64 < limit; u += 2) {
        const Integer p = u * u + 64;
        if (is_prime(p)) out.push_back(p);
    }
    return out;
}

std::vector<DerivedCurve> twists_by_two(const CurveBundle& bundle) {
    std::vector<DerivedCurve> out;
    for (const auto& r : bundle.records())
        if (r.label_conductor() == 32 || r.label_conductor() == 128)
            out.push_back({r.label + "^(2)", quadratic_twist(r.model, TwistParameter(2L))});
    return out;
}

ClassifiedCurve classify(const CurveRecord& record) {
    const Factorization nf = factorize(record.label_conductor());
    if (nf.factors.size() != 1)
        fail(ErrorCode::Precondition, record.label + " does not have prime power conductor");
    ClassifiedCurve c;
    c.id = record.label;
    c.model = record.model;
    c.prime = nf.factors[0].prime;
    c.exponent = nf.factors[0].exponent;
    c.v2_m_over_c2 = static_cast<long>(nu(2, record.m_E)) - 2 * static_cast<long>(nu(2, record.c_E));
    if (c.prime == 2) {
        if (c.exponent != 5 && c.exponent != 7)
            fail(ErrorCode::Precondition, record.label + ": only conductors 32 and 128 are classified");
        c.family = record.label == "32.a3" ? Family::Curve32a3 : Family::TwoPower;
    } else {
        if (c.exponent > 2) fail(ErrorCode::Precondition, record.label + ": conductor exponent above 2");
        c.family = record.label == "17.a4" ? Family::Curve17a4 : Family::OddPrimePower;
    }
    if (!has_rational_two_torsion(record.model))
        fail(ErrorCode::Precondition, record.label + " has no rational 2-torsion");
    return c;
}

ClassifiedCurve classify_setzer(const Integer& p, int which) {
    if (which != 1 && which != 2) fail(ErrorCode::InvalidArgument, "Setzer curve index must be 1 or 2");
    const SetzerPair pair = setzer_pair(p);
    ClassifiedCurve c;
    c.id = to_string(p) + (which == 1 ? ".a1" : ".a2");
    c.model = which == 1 ? pair.curve_a1 : pair.curve_a2;
    c.prime = p;
    c.exponent = 1;
    c.family = Family::OddPrimePower;
    c.v2_m_over_c2 = -1;
    c.v2_is_bound = true;
    return c;
}

ClassifiedCurve classify_model(const WeierstrassModel& model, const CurveBundle& bundle) {
    if (const CurveRecord* rec = bundle.find_model(model)) return classify(*rec);
    const WeierstrassModel minimal = minimal_model(model).model;
    const Integer disc = discriminant(minimal);
    Integer p = abs(disc);
    if (disc < 0 && mpz_perfect_square_p(p.get_mpz_t())) mpz_sqrt(p.get_mpz_t(), p.get_mpz_t());
    if (p != 17 && is_prime(p) && mpz_perfect_square_p(Integer(p - 64).get_mpz_t()) && p > 64) {
        const SetzerPair pair = setzer_pair(p);
        if (minimal_model(pair.curve_a1).model == minimal) return classify_setzer(p, 1);
        if (minimal_model(pair.curve_a2).model == minimal) return classify_setzer(p, 2);
    }
    fail(ErrorCode::Precondition, "curve " + model.literal() + " is not in a classified family");
}

const std::vector<PrintedSignatureRow>& printed_signature_table() {
    static const std::vector<PrintedSignatureRow> rows = [] {
        const ExtNat inf = ExtNat::infinity();
        auto e = [](long v) { return ExtNat(v); };
        return std::vector<PrintedSignatureRow>{
            {"32.a1", 528, 12096, e(4), e(6), e(9)},     {"32.a2", 528, -12096, e(4), e(6), e(9)},
            {"32.a3", 48, 0, e(4), inf, e(6)},           {"32.a4", -192, 0, e(6), inf, e(12)},
            {"128.a1", 448, -8704, e(6), e(9), e(13)},   {"128.a2", -32, -640, e(5), e(7), e(8)},
            {"128.b1", 112, 1088, e(4), e(6), e(7)},     {"128.b2", -128, 5120, e(7), e(10), e(14)},
            {"128.c1", 448, 3392, e(6), e(6), e(13)},    {"128.c2", -32, 1088, e(5), e(6), e(8)},
            {"128.d1", 112, -2368, e(4), e(6), e(7)},    {"128.d2", -128, -3520, e(7), e(6), e(14)},
        };
    }();
    return rows;
}

const std::vector<PrintedDiscriminant>& printed_discriminants() {
    static const std::vector<PrintedDiscriminant> rows = {
        {"17.a1", "17"},     {"17.a2", "17^2"},   {"17.a3", "-17^4"},  {"17.a4", "17"},    {"49.a1", "7^9"},
        {"49.a2", "7^9"},    {"49.a3", "7^3"},    {"49.a4", "7^2"},    {"32.a1", "2^9"},   {"32.a2", "2^9"},
        {"32.a3", "2^6"},    {"32.a4", "-2^12"},  {"128.a1", "2^13"},  {"128.a2", "-2^8"}, {"128.b1", "2^7"},
        {"128.b2", "-2^14"}, {"128.c1", "2^13"},  {"128.c2", "-2^8"},  {"128.d1", "2^7"},  {"128.d2", "-2^14"},
    };
    return rows;
}

bool TablesReport::all_ok() const {
    for (const auto& c : checks)
        if (!c.ok) return false;
    return true;
}

std::vector<TableCheck> TablesReport::failures() const {
    std::vector<TableCheck> out;
    for (const auto& c : checks)
        if (!c.ok) out.push_back(c);
    return out;
}

TablesReport verify_tables(const CurveBundle& bundle, const Integer& setzer_limit) {
    TablesReport report;
    auto add = [&](std::string group, std::string subject, std::string expected, std::string actual) {
        const bool ok = expected == actual;
        report.checks.push_back({std::move(group), std::move(subject), std::move(expected), std::move(actual), ok});
    };

    for (const auto& rec : bundle.records()) {
        const Integer disc = discriminant(rec.model);
        add("discriminant", rec.label, format_factored(rec.disc), format_factored(factorize(disc)));
        add("conductor", rec.label, to_string(rec.label_conductor()), to_string(conductor(rec.model).value));
        add("two-torsion", rec.label, "true", str_of(has_rational_two_torsion(rec.model)));
    }
    for (const auto& printed : printed_discriminants()) {
        const CurveRecord* rec = nullptr;
        for (const auto& r : bundle.records())
            if (r.label == printed.label) rec = &r;
        if (!rec) continue;
        add("printed-discriminant", printed.label, format_factored(parse_factored(printed.disc)),
            format_factored(factorize(discriminant(rec->model))));
    }
    for (const auto& row : printed_signature_table()) {
        const CurveRecord* rec = nullptr;
        for (const auto& r : bundle.records())
            if (r.label == row.label) rec = &r;
        if (!rec) {
            add("signature", row.label, "present in bundle", "missing");
            continue;
        }
        const Invariants inv = invariants(minimal_model(rec->model).model);
        add("c4-c6", row.label, "(" + to_string(row.c4) + "," + to_string(row.c6) + ")",
            "(" + to_string(inv.c4) + "," + to_string(inv.c6) + ")");
        const Signature sig = signature(rec->model, Integer(2));
        Signature expected;
        expected.v_c4 = row.v_c4;
        expected.v_c6 = row.v_c6;
        expected.v_disc = row.v_disc;
        add("signature", row.label, expected.str(), sig.str());
    }
    for (const auto& p : setzer_primes(setzer_limit)) {
        const SetzerPair pair = setzer_pair(p);
        const std::string id = to_string(p);
        add("setzer-discriminant", id + ".a1", to_string(p), to_string(discriminant(pair.curve_a1)));
        add("setzer-discriminant", id + ".a2", to_string(Integer(-p * p)), to_string(discriminant(pair.curve_a2)));
        add("setzer-conductor", id + ".a1", id, to_string(conductor(pair.curve_a1).value));
        add("setzer-conductor", id + ".a2", id, to_string(conductor(pair.curve_a2).value));
        add("setzer-two-torsion", id + ".a1", "true", str_of(has_rational_two_torsion(pair.curve_a1)));
        add("setzer-two-torsion", id + ".a2", "true", str_of(has_rational_two_torsion(pair.curve_a2)));
        ++report.setzer_primes_checked;
    }
    for (const auto& tw : twists_by_two(bundle)) {
        const bool from32 = tw.label.rfind("32.", 0) == 0;
        add("twist-by-2-conductor", tw.label, from32 ? "64" : "256", to_string(conductor(tw.model).value));
        add("twist-by-2-two-torsion", tw.label, "true", str_of(has_rational_two_torsion(tw.model)));
    }
    for (const auto& rec : bundle.records()) {
        report.unchecked.push_back(rec.label + ": m_E=" + to_string(rec.m_E));
        report.unchecked.push_back(rec.label + ": c_E=" + to_string(rec.c_E));
    }
    return report;
}

} // namespace watkins
