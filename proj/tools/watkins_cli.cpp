// Command line front end; talks to the library only through watkins.h.
#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "watkins/watkins.h"

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

struct CallError {
    wk_status status;
    std::string message;
};

void check(wk_status s) {
    if (s != WK_OK) throw CallError{s, wk_last_error()};
}

std::string take(char* s) {
    std::string out = s ? s : "";
    wk_string_free(s);
    return out;
}

using BundlePtr = std::unique_ptr<wk_bundle, decltype(&wk_bundle_free)>;
using CurvePtr = std::unique_ptr<wk_curve, decltype(&wk_curve_free)>;
using CoeffsPtr = std::unique_ptr<wk_coeffs, decltype(&wk_coeffs_free)>;

struct Options {
    std::string data;
    std::string curve;
    std::string label;
    bool json = false;
    unsigned threads = 0;

    std::string p = "2";
    std::string D;
    std::int64_t q = 0;
    std::int64_t B = 100;
    bool refined = false;
    std::string setzer_limit = "10000";
    std::string d;
    std::vector<std::string> ds{"3", "5", "7", "15", "21", "105"};
    std::int64_t q_max = 500;
    long max_abs_d = 50;
    std::string limit;
};

unsigned thread_budget(unsigned requested) {
    unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("WATKINS_THREADS"); env && *env) {
        char* end = nullptr;
        const unsigned long cap = std::strtoul(env, &end, 10);
        if (end && *end == '\0' && cap > 0) n = std::min<unsigned long>(n, cap);
    }
    return n;
}

BundlePtr load_bundle(const Options& o) {
    wk_bundle* b = nullptr;
    if (!o.data.empty())
        check(wk_bundle_load_file(o.data.c_str(), &b));
    else
        check(wk_bundle_load_default(&b));
    return {b, wk_bundle_free};
}

CurvePtr load_curve(const Options& o, const wk_bundle* bundle) {
    wk_curve* c = nullptr;
    if (!o.curve.empty() == !o.label.empty())
        throw CallError{WK_E_INVALID_ARGUMENT, "give exactly one of --curve or --label"};
    if (!o.label.empty())
        check(wk_curve_from_label(bundle, o.label.c_str(), &c));
    else
        check(wk_curve_from_literal(o.curve.c_str(), &c));
    return {c, wk_curve_free};
}

std::string literal(const wk_curve* c) {
    char* s = nullptr;
    check(wk_curve_literal(c, &s));
    return take(s);
}

std::string val(const json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

void emit(const Options& o, const std::string& raw, const std::string& text) {
    if (o.json)
        std::cout << raw << '\n';
    else
        std::cout << text;
}

void print_watkins(const json& r) {
    std::cout << "curve            " << val(r["curve"]) << "\n";
    std::cout << "D                " << val(r["D"]) << "\n";
    if (r["basis"] != r["curve"])
        std::cout << "computed on      " << val(r["basis"]) << " with D = " << val(r["basis_D"]) << "\n";
    std::cout << "rank_upper       " << val(r["rank_upper"]) << "\n";
    const json& t = r["terms"];
    std::cout << "v2(m/c^2)        " << val(t["v2_m_over_c2"]) << (t["v2_is_bound"].get<bool>() ? " (lower bound)" : "")
              << "\n";
    std::cout << "petersson        " << val(t["petersson"]) << " (case " << val(r["case"]) << ")\n";
    std::cout << "disc             " << val(t["disc"]) << "\n";
    std::cout << "mdeg_val_lower   " << val(r["mdeg_val_lower"]) << "\n";
    std::cout << "twist conductor  " << val(r["twist_conductor"]) << "\n";
    std::cout << "verdict          " << val(r["verdict"]) << "\n";
    if (!r["note"].get<std::string>().empty()) std::cout << "note             " << val(r["note"]) << "\n";
}

int cmd_invariants(const Options& o) {
    auto bundle = load_bundle(o);
    auto curve = load_curve(o, bundle.get());
    char* s = nullptr;
    check(wk_curve_invariants_json(curve.get(), &s));
    const std::string raw = take(s);
    const json j = json::parse(raw);
    std::string text;
    for (const char* k : {"b2", "b4", "b6", "b8", "c4", "c6", "disc"}) text += std::string(k) + " = " + val(j[k]) + "\n";
    text += "disc = " + val(j["disc_factored"]) + "\n";
    emit(o, raw, text);
    return kExitOk;
}

int cmd_signature(const Options& o) {
    auto bundle = load_bundle(o);
    auto curve = load_curve(o, bundle.get());
    char* s = nullptr;
    check(wk_curve_signature_json(curve.get(), o.p.c_str(), &s));
    const std::string raw = take(s);
    emit(o, raw, val(json::parse(raw)["text"]) + "\n");
    return kExitOk;
}

int cmd_twist(const Options& o) {
    auto bundle = load_bundle(o);
    auto curve = load_curve(o, bundle.get());
    wk_curve* t = nullptr;
    check(wk_curve_twist(curve.get(), o.D.c_str(), &t));
    CurvePtr twisted(t, wk_curve_free);
    const std::string lit = literal(twisted.get());
    json j;
    j["curve"] = literal(curve.get());
    j["D"] = o.D;
    j["twist"] = lit;
    emit(o, j.dump(), lit + "\n");
    return kExitOk;
}

int cmd_local(const Options& o) {
    auto bundle = load_bundle(o);
    auto curve = load_curve(o, bundle.get());
    char* s = nullptr;
    check(wk_curve_local_json(curve.get(), o.p.c_str(), &s));
    const std::string raw = take(s);
    const json j = json::parse(raw);
    emit(o, raw,
         "p = " + val(j["p"]) + ": " + val(j["reduction"]) + ", Kodaira " + val(j["kodaira"]) + ", f_p = " +
             val(j["f_p"]) + ", v(disc_min) = " + val(j["v_disc_min"]) + "\n");
    return kExitOk;
}

int cmd_conductor(const Options& o) {
    auto bundle = load_bundle(o);
    auto curve = load_curve(o, bundle.get());
    char* s = nullptr;
    check(wk_curve_conductor_json(curve.get(), &s));
    const std::string raw = take(s);
    const json j = json::parse(raw);
    std::string text = val(j["conductor"]) + " = " + val(j["factored"]) + "\n";
    for (const auto& l : j["local"])
        text += "  p = " + val(l["p"]) + ": " + val(l["kodaira"]) + ", f_p = " + val(l["f_p"]) + "\n";
    emit(o, raw, text);
    return kExitOk;
}

int cmd_ap(const Options& o) {
    auto bundle = load_bundle(o);
    auto curve = load_curve(o, bundle.get());
    std::int64_t a = 0;
    check(wk_curve_ap(curve.get(), o.q, &a));
    json j;
    j["q"] = o.q;
    j["a_q"] = a;
    emit(o, j.dump(), std::to_string(a) + "\n");
    return kExitOk;
}

int cmd_coeffs(const Options& o) {
    auto bundle = load_bundle(o);
    auto curve = load_curve(o, bundle.get());
    wk_coeffs* c = nullptr;
    check(wk_coeffs_expand(curve.get(), o.B, thread_budget(o.threads), &c));
    CoeffsPtr coeffs(c, wk_coeffs_free);
    if (o.json) {
        json j;
        j["curve"] = literal(curve.get());
        j["B"] = o.B;
        j["a"] = json::array();
        for (std::int64_t n = 1; n <= o.B; ++n) {
            std::int64_t a = 0;
            check(wk_coeffs_get(coeffs.get(), n, &a));
            j["a"].push_back(a);
        }
        std::cout << j.dump() << '\n';
    } else {
        char* s = nullptr;
        check(wk_coeffs_csv(coeffs.get(), &s));
        std::cout << take(s);
    }
    return kExitOk;
}

int cmd_bound_watkins(const Options& o) {
    auto bundle = load_bundle(o);
    auto curve = load_curve(o, bundle.get());
    char* s = nullptr;
    check(wk_watkins_verdict_json(bundle.get(), curve.get(), o.D.c_str(), &s));
    const std::string raw = take(s);
    if (o.json)
        std::cout << raw << '\n';
    else
        print_watkins(json::parse(raw));
    return kExitOk;
}

int cmd_bound_petersson(const Options& o) {
    auto bundle = load_bundle(o);
    auto curve = load_curve(o, bundle.get());
    char* s = nullptr;
    check(wk_petersson_json(bundle.get(), curve.get(), o.D.c_str(), o.refined ? 1 : 0, &s));
    const std::string raw = take(s);
    const json j = json::parse(raw);
    emit(o, raw, val(j["petersson"]) + " (case " + val(j["case"]) + ")\n");
    return kExitOk;
}

int cmd_bound_rank_dx(const Options& o) {
    long b = 0;
    check(wk_rank_upper_dx(o.d.c_str(), &b));
    json j;
    j["d"] = o.d;
    j["rank_upper"] = b;
    emit(o, j.dump(), std::to_string(b) + "\n");
    return kExitOk;
}

int verdict(bool ok) { return ok ? kExitOk : kExitFailed; }

int cmd_verify_tables(const Options& o) {
    auto bundle = load_bundle(o);
    char* s = nullptr;
    int ok = 0;
    check(wk_verify_tables_json(bundle.get(), o.setzer_limit.c_str(), &s, &ok));
    const std::string raw = take(s);
    const json j = json::parse(raw);
    std::string text = val(j["checks"]) + " checks, " + std::to_string(j["failures"].size()) + " failed, " +
                       val(j["setzer_primes_checked"]) + " Setzer primes\n";
    for (const auto& f : j["failures"])
        text += "MISMATCH " + val(f["group"]) + " " + val(f["subject"]) + ": expected " + val(f["expected"]) +
                ", computed " + val(f["actual"]) + "\n";
    text += "not recomputable (trusted data): m_E, c_E for " + std::to_string(j["unchecked"].size() / 2) + " curves\n";
    emit(o, raw, text);
    return verdict(ok);
}

int cmd_verify_congruence(const Options& o) {
    char* s = nullptr;
    int ok = 0;
    check(wk_verify_congruence_json(o.d.c_str(), o.B, thread_budget(o.threads), &s, &ok));
    const std::string raw = take(s);
    const json j = json::parse(raw);
    std::string text = "d = " + val(j["d"]) + ", m = " + val(j["m"]) + ", epsilon = " + val(j["epsilon"]) +
                       ", bound = " + val(j["bound"]) + ", B = " + val(j["B"]) + "\n";
    text += "min observed valuation " + val(j["min_observed_val"]) + ", tight cases " + val(j["tight_count"]) + "\n";
    for (const auto& w : j["tight_witnesses"])
        text += "  n = " + val(w["n"]) + ": a_n(S) = " + val(w["value"]) + ", v2 = " + val(w["val2"]) + "\n";
    for (const auto& n : j["valuation_failures"]) text += "VALUATION FAILURE at n = " + val(n) + "\n";
    for (const auto& v : j["claim_violations"])
        text += "CLAIM FAILURE at n = " + val(v["n"]) + ": expected " + val(v["expected"]) + ", got " +
                val(v["actual"]) + "\n";
    text += std::string("claim ") + (j["claim_ok"].get<bool>() ? "ok" : "FAILED") + ", conductor family " +
            (j["conductor_family_ok"].get<bool>() ? "ok" : "FAILED") + "\n";
    emit(o, raw, text);
    return verdict(ok);
}

int cmd_verify_lemmas(const Options& o) {
    std::vector<const char*> ds;
    for (const auto& d : o.ds) ds.push_back(d.c_str());
    char* s = nullptr;
    int ok = 0;
    check(wk_verify_lemmas_json(ds.data(), ds.size(), o.q_max, &s, &ok));
    const std::string raw = take(s);
    const json j = json::parse(raw);
    std::string text = val(j["checks"]) + " congruence checks, " + val(j["identity_checks"]) +
                       " sum-of-two-squares checks, " + std::to_string(j["failures"].size()) + " failed\n";
    for (const auto& f : j["failures"])
        text += "FAILURE d = " + val(f["d"]) + ", q = " + val(f["q"]) + ", k = " + val(f["k"]) + "\n";
    emit(o, raw, text);
    return verdict(ok);
}

int cmd_verify_conductor_family(const Options& o) {
    char* s = nullptr;
    int ok = 0;
    check(wk_verify_conductor_family_json(o.d.c_str(), &s, &ok));
    const std::string raw = take(s);
    const json j = json::parse(raw);
    std::string text;
    for (const auto& c : j["conductors"]) text += "D = " + val(c["D"]) + ": N = " + val(c["N"]) + "\n";
    text += std::string(ok ? "all equal" : "MISMATCH") + "\n";
    emit(o, raw, text);
    return verdict(ok);
}

int cmd_verify_sweep(const Options& o) {
    auto bundle = load_bundle(o);
    char* s = nullptr;
    int ok = 0;
    check(wk_watkins_sweep_json(bundle.get(), o.max_abs_d, thread_budget(o.threads), &s, &ok));
    const std::string raw = take(s);
    const json j = json::parse(raw);
    std::string text = val(j["total"]) + " reports for |D| <= " + val(j["max_abs_D"]) + "\n";
    for (const auto& [k, v] : j["verdicts"].items()) text += "  " + k + ": " + val(v) + "\n";
    text += "closed-form territory: " + val(j["territory"]["holds_by_bounds"]) + "/" + val(j["territory"]["total"]) +
            " hold by bounds\n";
    text += std::string("assembly identity ") + (j["assembly_ok"].get<bool>() ? "ok" : "FAILED") + "\n";
    for (const auto& m : j["territory"]["misses"])
        text += "TERRITORY MISS " + val(m["curve"]) + " D = " + val(m["D"]) + "\n";
    for (const auto& u : j["undecided"]) text += "UNDECIDED " + val(u["curve"]) + " D = " + val(u["D"]) + "\n";
    if (!j["undecided"].empty()) text += val(j["note"]) + "\n";
    emit(o, raw, text);
    return verdict(ok);
}

int cmd_setzer(const Options& o) {
    char* s = nullptr;
    if (!o.limit.empty()) {
        check(wk_setzer_primes_json(o.limit.c_str(), &s));
        const std::string raw = take(s);
        std::string text;
        for (const auto& p : json::parse(raw)) text += val(p) + "\n";
        emit(o, raw, text);
        return kExitOk;
    }
    if (o.p.empty()) throw CallError{WK_E_INVALID_ARGUMENT, "give --p or --limit"};
    check(wk_setzer_pair_json(o.p.c_str(), &s));
    const std::string raw = take(s);
    const json j = json::parse(raw);
    std::string text = "p = " + val(j["p"]) + ", u = " + val(j["u"]) + "\n";
    for (const auto& c : j["curves"]) {
        std::string model = "[";
        for (std::size_t i = 0; i < c["model"].size(); ++i) model += (i ? "," : "") + val(c["model"][i]);
        text += val(c["label"]) + " " + model + "] disc " + val(c["disc"]) + "\n";
    }
    emit(o, raw, text);
    return kExitOk;
}

void add_curve_options(CLI::App* app, Options& o) {
    app->add_option("--curve", o.curve, "Weierstrass coefficients a1,a2,a3,a4,a6");
    app->add_option("--label", o.label, "label of a bundled curve, e.g. 32.a3");
}

} // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"Elliptic curve twist bounds and congruence checks"};
    app.require_subcommand(1);
    app.add_option("--data", o.data, "curve data CSV (overrides WATKINS_DATA)");
    app.add_flag("--json", o.json, "machine readable output");
    app.add_option("--threads", o.threads, "worker threads (0 = all cores; WATKINS_THREADS caps it)");

    int (*action)(const Options&) = nullptr;
    auto leaf = [&](CLI::App* sub, int (*fn)(const Options&)) {
        sub->add_flag("--json", o.json, "machine readable output");
        sub->callback([&action, fn] { action = fn; });
    };

    auto* inv = app.add_subcommand("invariants", "b- and c-invariants and discriminant");
    add_curve_options(inv, o);
    leaf(inv, cmd_invariants);

    auto* sig = app.add_subcommand("signature", "p-adic signature of the minimal model");
    add_curve_options(sig, o);
    sig->add_option("-p,--p", o.p, "prime (default 2)");
    leaf(sig, cmd_signature);

    auto* tw = app.add_subcommand("twist", "minimal model of the quadratic twist");
    add_curve_options(tw, o);
    tw->add_option("-D", o.D, "squarefree twist parameter")->required();
    leaf(tw, cmd_twist);

    auto* loc = app.add_subcommand("local", "Tate's algorithm at one prime");
    add_curve_options(loc, o);
    loc->add_option("-p,--p", o.p, "prime")->required();
    leaf(loc, cmd_local);

    auto* cond = app.add_subcommand("conductor", "conductor and local data");
    add_curve_options(cond, o);
    leaf(cond, cmd_conductor);

    auto* ap = app.add_subcommand("ap", "trace of Frobenius at a prime");
    add_curve_options(ap, o);
    ap->add_option("-q,--q", o.q, "prime")->required();
    leaf(ap, cmd_ap);

    auto* co = app.add_subcommand("coeffs", "newform coefficients a_1..a_B as n,a_n CSV");
    add_curve_options(co, o);
    co->add_option("-B", o.B, "coefficient bound")->required();
    co->add_option("--threads", o.threads, "worker threads");
    leaf(co, cmd_coeffs);

    auto* bound = app.add_subcommand("bound", "valuation and rank bounds");
    bound->require_subcommand(1);
    auto* bw = bound->add_subcommand("watkins", "modular degree valuation bound and verdict for a twist");
    add_curve_options(bw, o);
    bw->add_option("-D", o.D, "squarefree twist parameter")->required();
    leaf(bw, cmd_bound_watkins);
    auto* bp = bound->add_subcommand("petersson", "Petersson norm ratio valuation bound");
    add_curve_options(bp, o);
    bp->add_option("-D", o.D, "squarefree twist parameter")->required();
    bp->add_flag("--refined", o.refined, "term sum with actual coefficients");
    leaf(bp, cmd_bound_petersson);
    auto* br = bound->add_subcommand("rank-dx", "rank bound for y^2 = x^3 - dx");
    br->add_option("-d", o.d, "nonzero integer")->required();
    leaf(br, cmd_bound_rank_dx);

    auto* verify = app.add_subcommand("verify", "verification campaigns (exit 1 on any failure)");
    verify->require_subcommand(1);
    auto* vt = verify->add_subcommand("tables", "recompute the bundled tables and Setzer pairs");
    vt->add_option("--setzer-limit", o.setzer_limit, "Setzer primes below this bound (default 10000)");
    leaf(vt, cmd_verify_tables);
    auto* vc = verify->add_subcommand("congruence", "alternating twist sums for y^2 = x^3 - dD^2x");
    vc->add_option("-d", o.d, "odd squarefree d >= 3")->required();
    vc->add_option("-B", o.B, "coefficient bound (>= 100)")->required();
    vc->add_option("--threads", o.threads, "worker threads");
    leaf(vc, cmd_verify_congruence);
    auto* vl = verify->add_subcommand("lemmas", "coefficient congruences and the sum-of-two-squares identity");
    vl->add_option("-d", o.ds, "values of d (default 3 5 7 15 21 105)");
    vl->add_option("--qmax", o.q_max, "largest prime q (default 500)");
    leaf(vl, cmd_verify_lemmas);
    auto* vf = verify->add_subcommand("conductor-family", "equal conductors across y^2 = x^3 - dD^2x, D | d");
    vf->add_option("-d", o.d, "odd squarefree d")->required();
    leaf(vf, cmd_verify_conductor_family);
    auto* vs = verify->add_subcommand("watkins-sweep", "verdicts for every bundled curve and |D| <= max");
    vs->add_option("--max-d", o.max_abs_d, "largest |D| (default 50)");
    vs->add_option("--threads", o.threads, "worker threads");
    leaf(vs, cmd_verify_sweep);

    auto* sz = app.add_subcommand("setzer", "prime conductor curves with rational 2-torsion");
    sz->add_option("-p,--p", o.p, "prime of the form u^2 + 64");
    sz->add_option("--limit", o.limit, "list the admissible primes below this bound");
    leaf(sz, cmd_setzer);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }
    if (sz->parsed() && sz->count("--p") == 0 && o.limit.empty()) o.p.clear();
    try {
        return action ? action(o) : kExitUsage;
    } catch (const CallError& e) {
        std::cerr << "error: " << wk_status_name(e.status) << ": " << e.message << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}
