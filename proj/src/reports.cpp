#include "watkins/reports.hpp"

#include <json.hpp>
#include <map>

#include "watkins/error.hpp"

namespace watkins {

namespace {

using json = nlohmann::ordered_json;

json int_json(const Integer& n) {
    if (n.fits_slong_p()) return n.get_si();
    return to_string(n);
}

Integer int_from(const json& j) {
    if (j.is_number_integer()) return Integer(j.get<long>());
    if (j.is_string()) return parse_integer(j.get<std::string>());
    fail(ErrorCode::Parse, "expected an integer, got " + j.dump());
}

json rational_json(const Rational& q) {
    if (q.get_den() == 1) return int_json(q.get_num());
    return to_string(q);
}

Rational rational_from(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (!j.is_string()) fail(ErrorCode::Parse, "expected a rational, got " + j.dump());
    const std::string s = j.get<std::string>();
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(parse_integer(s));
    Rational q(parse_integer(s.substr(0, slash)), parse_integer(s.substr(slash + 1)));
    if (q.get_den() == 0) fail(ErrorCode::Parse, "zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

json ext_json(const ExtNat& v) {
    if (v.is_infinite()) return "inf";
    return v.value();
}

ExtNat ext_from(const json& j) {
    if (j.is_string() && j.get<std::string>() == "inf") return ExtNat::infinity();
    if (j.is_number_integer()) return ExtNat(j.get<long>());
    fail(ErrorCode::Parse, "expected a valuation, got " + j.dump());
}

json model_json(const WeierstrassModel& m) {
    return json::array({int_json(m.a1), int_json(m.a2), int_json(m.a3), int_json(m.a4), int_json(m.a6)});
}

json parse_or_fail(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        fail(ErrorCode::Parse, std::string("malformed JSON: ") + e.what());
    }
}

template <class Fn>
auto guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const json::exception& e) {
        fail(ErrorCode::Parse, std::string("unexpected JSON shape: ") + e.what());
    }
}

json watkins_json(const WatkinsReport& r) {
    json j;
    j["curve"] = r.curve;
    j["D"] = int_json(r.D);
    j["basis"] = r.basis;
    j["basis_D"] = int_json(r.basis_D);
    j["rank_upper"] = r.rank_upper;
    j["terms"] = {{"v2_m_over_c2", r.v2_m_over_c2},
                  {"v2_is_bound", r.v2_is_bound},
                  {"petersson", r.petersson_term},
                  {"disc", rational_json(r.disc_term)}};
    j["mdeg_val_lower"] = rational_json(r.mdeg_val_lower);
    j["verdict"] = to_string(r.verdict);
    j["case"] = to_string(r.case_tag);
    j["twist_conductor"] = int_json(r.twist_conductor);
    j["note"] = r.note;
    return j;
}

json local_json(const LocalReduction& l) {
    return {{"p", int_json(l.p)},
            {"reduction", to_string(l.kind)},
            {"kodaira", l.kodaira},
            {"f_p", l.f_p},
            {"v_disc_min", l.v_disc_min}};
}

} // namespace

std::string to_json(const Invariants& inv) {
    json j;
    j["b2"] = int_json(inv.b2);
    j["b4"] = int_json(inv.b4);
    j["b6"] = int_json(inv.b6);
    j["b8"] = int_json(inv.b8);
    j["c4"] = int_json(inv.c4);
    j["c6"] = int_json(inv.c6);
    j["disc"] = int_json(inv.disc);
    j["disc_factored"] = format_factored(factorize(inv.disc));
    return j.dump();
}

std::string to_json(const Signature& sig) {
    json j;
    j["p"] = int_json(sig.p);
    j["signature"] = json::array({ext_json(sig.v_c4), ext_json(sig.v_c6), ext_json(sig.v_disc)});
    j["text"] = sig.str();
    j["minimized"] = sig.minimized;
    return j.dump();
}

std::string to_json(const LocalReduction& local) { return local_json(local).dump(); }

std::string to_json(const Conductor& n) {
    json j;
    j["conductor"] = int_json(n.value);
    j["factored"] = format_factored(n.factored);
    j["local"] = json::array();
    for (const auto& l : n.local) j["local"].push_back(local_json(l));
    return j.dump();
}

std::string to_json(const SetzerPair& pair) {
    json j;
    j["p"] = int_json(pair.p);
    j["u"] = int_json(pair.u);
    j["curves"] = json::array({{{"label", to_string(pair.p) + ".a1"}, {"model", model_json(pair.curve_a1)},
                                {"disc", int_json(discriminant(pair.curve_a1))}},
                               {{"label", to_string(pair.p) + ".a2"}, {"model", model_json(pair.curve_a2)},
                                {"disc", int_json(discriminant(pair.curve_a2))}, {"optimal", true}}});
    return j.dump();
}

std::string to_json(const TablesReport& report) {
    json j;
    j["ok"] = report.all_ok();
    j["checks"] = report.checks.size();
    j["setzer_primes_checked"] = report.setzer_primes_checked;
    j["failures"] = json::array();
    for (const auto& c : report.failures())
        j["failures"].push_back(
            {{"group", c.group}, {"subject", c.subject}, {"expected", c.expected}, {"actual", c.actual}});
    j["unchecked"] = report.unchecked;
    return j.dump();
}

std::string to_json(const WatkinsReport& report) { return watkins_json(report).dump(); }

WatkinsReport watkins_report_from_json(const std::string& text) {
    const json j = parse_or_fail(text);
    return guarded([&] {
        WatkinsReport r;
        r.curve = j.at("curve").get<std::string>();
        r.D = int_from(j.at("D"));
        r.basis = j.at("basis").get<std::string>();
        r.basis_D = int_from(j.at("basis_D"));
        r.rank_upper = j.at("rank_upper").get<long>();
        const json& t = j.at("terms");
        r.v2_m_over_c2 = t.at("v2_m_over_c2").get<long>();
        r.v2_is_bound = t.at("v2_is_bound").get<bool>();
        r.petersson_term = t.at("petersson").get<long>();
        r.disc_term = rational_from(t.at("disc"));
        r.mdeg_val_lower = rational_from(j.at("mdeg_val_lower"));
        r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
        r.case_tag = case_tag_from_string(j.at("case").get<std::string>());
        r.twist_conductor = int_from(j.at("twist_conductor"));
        r.note = j.at("note").get<std::string>();
        return r;
    });
}

std::string to_json(const CongruenceReport& r) {
    json j;
    j["d"] = int_json(r.d);
    j["m"] = r.m;
    j["epsilon"] = r.epsilon;
    j["bound"] = r.bound;
    j["B"] = r.B;
    j["min_observed_val"] = ext_json(r.min_observed_val);
    j["tight_count"] = r.tight_count;
    j["tight_witnesses"] = json::array();
    for (const auto& w : r.tight_witnesses)
        j["tight_witnesses"].push_back({{"n", w.n}, {"value", int_json(w.value)}, {"val2", w.val2}});
    j["valuation_failures"] = r.valuation_failures;
    j["claim_violations"] = json::array();
    for (const auto& v : r.claim_violations)
        j["claim_violations"].push_back(
            {{"n", v.n}, {"expected", int_json(v.expected)}, {"actual", int_json(v.actual)}});
    j["claim_ok"] = r.claim_ok;
    j["conductor_family_ok"] = r.conductor_family_ok;
    j["passed"] = r.passed();
    return j.dump();
}

CongruenceReport congruence_report_from_json(const std::string& text) {
    const json j = parse_or_fail(text);
    return guarded([&] {
        CongruenceReport r;
        r.d = int_from(j.at("d"));
        r.m = j.at("m").get<unsigned>();
        r.epsilon = j.at("epsilon").get<unsigned>();
        r.bound = j.at("bound").get<unsigned>();
        r.B = j.at("B").get<std::int64_t>();
        r.min_observed_val = ext_from(j.at("min_observed_val"));
        r.tight_count = j.at("tight_count").get<std::size_t>();
        for (const auto& w : j.at("tight_witnesses"))
            r.tight_witnesses.push_back({w.at("n").get<std::int64_t>(), int_from(w.at("value")), w.at("val2").get<long>()});
        r.valuation_failures = j.at("valuation_failures").get<std::vector<std::int64_t>>();
        for (const auto& v : j.at("claim_violations"))
            r.claim_violations.push_back(
                {v.at("n").get<std::int64_t>(), int_from(v.at("expected")), int_from(v.at("actual"))});
        r.claim_ok = j.at("claim_ok").get<bool>();
        r.conductor_family_ok = j.at("conductor_family_ok").get<bool>();
        return r;
    });
}

std::string to_json(const std::vector<SweepEntry>& sweep, long max_abs_d) {
    std::map<std::string, std::size_t> counts;
    for (Verdict v : {Verdict::HoldsByBounds, Verdict::KnownPrimePower, Verdict::KnownSmallConductor,
                      Verdict::UndecidedByBounds})
        counts[to_string(v)] = 0;
    std::size_t territory = 0, territory_holds = 0;
    bool assembly_ok = true;
    json territory_misses = json::array();
    json undecided = json::array();
    json entries = json::array();
    for (const auto& e : sweep) {
        const WatkinsReport& r = e.report;
        ++counts[to_string(r.verdict)];
        assembly_ok = assembly_ok && r.assembly_ok();
        if (e.in_proof_territory) {
            ++territory;
            if (r.verdict == Verdict::HoldsByBounds)
                ++territory_holds;
            else
                territory_misses.push_back({{"curve", r.curve}, {"D", int_json(r.D)}});
        }
        if (r.verdict == Verdict::UndecidedByBounds) undecided.push_back({{"curve", r.curve}, {"D", int_json(r.D)}});
        json entry = watkins_json(r);
        entry["in_proof_territory"] = e.in_proof_territory;
        entries.push_back(std::move(entry));
    }
    json j;
    j["max_abs_D"] = max_abs_d;
    j["total"] = sweep.size();
    j["verdicts"] = counts;
    j["assembly_ok"] = assembly_ok;
    j["territory"] = {{"total", territory}, {"holds_by_bounds", territory_holds}, {"misses", territory_misses}};
    j["undecided"] = undecided;
    j["ok"] = assembly_ok && territory_misses.empty() && undecided.empty();
    j["note"] = "UNDECIDED_BY_BOUNDS means the bounds are insufficient, not that the conjecture fails";
    j["entries"] = entries;
    return j.dump();
}

std::string to_json(const std::vector<CongruenceLemmaResult>& results) {
    json j;
    std::size_t identities = 0;
    json failures = json::array();
    for (const auto& r : results) {
        if (r.identity_checked) ++identities;
        if (!r.ok())
            failures.push_back({{"d", int_json(r.d)},
                                {"q", r.q},
                                {"k", r.k},
                                {"symbol", r.symbol},
                                {"a_q_f", int_json(r.a_q_f)},
                                {"a_qk_f", int_json(r.a_qk_f)},
                                {"a_q_g", int_json(r.a_q_g)},
                                {"congruence_ok", r.congruence_ok},
                                {"identity_ok", r.identity_ok}});
    }
    j["checks"] = results.size();
    j["identity_checks"] = identities;
    j["failures"] = failures;
    j["ok"] = failures.empty();
    return j.dump();
}

std::string to_json(const ConductorFamilyResult& result) {
    json j;
    j["d"] = int_json(result.d);
    j["conductors"] = json::array();
    for (const auto& [D, n] : result.conductors) j["conductors"].push_back({{"D", int_json(D)}, {"N", int_json(n)}});
    j["ok"] = result.ok;
    return j.dump();
}

std::string to_json(const CorollaryResult& r) {
    json j;
    j["p"] = int_json(r.p);
    j["rank_upper_p"] = r.rank_upper_p;
    j["rank_upper_p3"] = r.rank_upper_p3;
    j["congruence_bound"] = r.congruence_bound;
    j["theorem_verified"] = r.theorem_verified;
    j["ok"] = r.ok;
    return j.dump();
}

} // namespace watkins
