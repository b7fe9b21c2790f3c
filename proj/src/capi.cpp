#include "watkins/watkins.h"

#include <json.hpp>
#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include "watkins/bounds.hpp"
#include "watkins/congruence.hpp"
#include "watkins/error.hpp"
#include "watkins/families.hpp"
#include "watkins/hecke.hpp"
#include "watkins/local_data.hpp"
#include "watkins/reports.hpp"

struct wk_bundle {
    watkins::CurveBundle bundle;
};

struct wk_curve {
    watkins::WeierstrassModel model;
};

struct wk_coeffs {
    watkins::CoefficientTable table;
};

namespace {

thread_local std::string last_error;

wk_status status_of(watkins::ErrorCode code) {
    using watkins::ErrorCode;
    switch (code) {
    case ErrorCode::InvalidArgument: return WK_E_INVALID_ARGUMENT;
    case ErrorCode::Singular: return WK_E_SINGULAR;
    case ErrorCode::UnknownLabel: return WK_E_UNKNOWN_LABEL;
    case ErrorCode::Precondition: return WK_E_PRECONDITION;
    case ErrorCode::Parse: return WK_E_PARSE;
    case ErrorCode::Io: return WK_E_IO;
    case ErrorCode::OutOfRange: return WK_E_OUT_OF_RANGE;
    }
    return WK_E_INTERNAL;
}

template <class Fn>
wk_status guard(Fn&& fn) {
    try {
        fn();
        last_error.clear();
        return WK_OK;
    } catch (const watkins::Error& e) {
        last_error = e.what();
        return status_of(e.code());
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return WK_E_INTERNAL;
    } catch (const std::exception& e) {
        last_error = e.what();
        return WK_E_INTERNAL;
    }
}

void require(const void* p, const char* name) {
    if (!p) watkins::fail(watkins::ErrorCode::InvalidArgument, std::string(name) + " is null");
}

char* dup(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

watkins::Integer integer_arg(const char* text, const char* name) {
    require(text, name);
    return watkins::parse_integer(text);
}

void set_ok(int* ok, bool value) {
    if (ok) *ok = value ? 1 : 0;
}

} // namespace

extern "C" {

const char* wk_version(void) { return "1.0.0"; }

const char* wk_status_name(wk_status status) {
    switch (status) {
    case WK_OK: return "ok";
    case WK_E_INVALID_ARGUMENT: return "invalid argument";
    case WK_E_SINGULAR: return "singular curve";
    case WK_E_UNKNOWN_LABEL: return "unknown label";
    case WK_E_PRECONDITION: return "precondition violated";
    case WK_E_PARSE: return "parse error";
    case WK_E_IO: return "i/o error";
    case WK_E_OUT_OF_RANGE: return "out of range";
    case WK_E_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* wk_last_error(void) { return last_error.c_str(); }

void wk_string_free(char* s) { std::free(s); }

wk_status wk_bundle_load_default(wk_bundle** out) {
    return guard([&] {
        require(out, "out");
        *out = new wk_bundle{watkins::CurveBundle::load_default()};
    });
}

wk_status wk_bundle_load_file(const char* path, wk_bundle** out) {
    return guard([&] {
        require(path, "path");
        require(out, "out");
        *out = new wk_bundle{watkins::CurveBundle::load_file(path)};
    });
}

void wk_bundle_free(wk_bundle* bundle) { delete bundle; }

size_t wk_bundle_size(const wk_bundle* bundle) { return bundle ? bundle->bundle.records().size() : 0; }

wk_status wk_bundle_record_json(const wk_bundle* bundle, size_t index, char** json) {
    return guard([&] {
        require(bundle, "bundle");
        require(json, "json");
        const auto& records = bundle->bundle.records();
        if (index >= records.size()) watkins::fail(watkins::ErrorCode::OutOfRange, "record index out of range");
        const auto& r = records[index];
        nlohmann::ordered_json j;
        j["label"] = r.label;
        j["model"] = r.model.literal();
        j["m_E"] = watkins::to_string(r.m_E);
        j["c_E"] = watkins::to_string(r.c_E);
        j["disc"] = watkins::format_factored(r.disc);
        *json = dup(j.dump());
    });
}

wk_status wk_curve_from_literal(const char* literal, wk_curve** out) {
    return guard([&] {
        require(literal, "literal");
        require(out, "out");
        wk_curve curve{watkins::WeierstrassModel::parse(literal)};
        watkins::invariants(curve.model);
        *out = new wk_curve(std::move(curve));
    });
}

wk_status wk_curve_from_label(const wk_bundle* bundle, const char* label, wk_curve** out) {
    return guard([&] {
        require(bundle, "bundle");
        require(label, "label");
        require(out, "out");
        *out = new wk_curve{bundle->bundle.lookup(label).model};
    });
}

void wk_curve_free(wk_curve* curve) { delete curve; }

wk_status wk_curve_literal(const wk_curve* curve, char** literal) {
    return guard([&] {
        require(curve, "curve");
        require(literal, "literal");
        *literal = dup(curve->model.literal());
    });
}

wk_status wk_curve_minimal(const wk_curve* curve, wk_curve** out) {
    return guard([&] {
        require(curve, "curve");
        require(out, "out");
        *out = new wk_curve{watkins::minimal_model(curve->model).model};
    });
}

wk_status wk_curve_twist(const wk_curve* curve, const char* d, wk_curve** out) {
    return guard([&] {
        require(curve, "curve");
        require(out, "out");
        const watkins::TwistParameter twist(integer_arg(d, "d"));
        *out = new wk_curve{watkins::quadratic_twist(curve->model, twist)};
    });
}

wk_status wk_curve_two_torsion(const wk_curve* curve, int* has_two_torsion) {
    return guard([&] {
        require(curve, "curve");
        require(has_two_torsion, "has_two_torsion");
        *has_two_torsion = watkins::has_rational_two_torsion(curve->model) ? 1 : 0;
    });
}

wk_status wk_curve_invariants_json(const wk_curve* curve, char** json) {
    return guard([&] {
        require(curve, "curve");
        require(json, "json");
        *json = dup(watkins::to_json(watkins::invariants(curve->model)));
    });
}

wk_status wk_curve_signature_json(const wk_curve* curve, const char* p, char** json) {
    return guard([&] {
        require(curve, "curve");
        require(json, "json");
        const watkins::Integer prime = integer_arg(p, "p");
        if (!watkins::is_prime(prime)) watkins::fail(watkins::ErrorCode::InvalidArgument, std::string(p) + " is not prime");
        *json = dup(watkins::to_json(watkins::signature(curve->model, prime)));
    });
}

wk_status wk_curve_local_json(const wk_curve* curve, const char* p, char** json) {
    return guard([&] {
        require(curve, "curve");
        require(json, "json");
        const watkins::Integer prime = integer_arg(p, "p");
        if (!watkins::is_prime(prime)) watkins::fail(watkins::ErrorCode::InvalidArgument, std::string(p) + " is not prime");
        *json = dup(watkins::to_json(watkins::tate(curve->model, prime)));
    });
}

wk_status wk_curve_conductor_json(const wk_curve* curve, char** json) {
    return guard([&] {
        require(curve, "curve");
        require(json, "json");
        *json = dup(watkins::to_json(watkins::conductor(curve->model)));
    });
}

wk_status wk_curve_ap(const wk_curve* curve, int64_t q, int64_t* a_q) {
    return guard([&] {
        require(curve, "curve");
        require(a_q, "a_q");
        if (!watkins::is_prime(static_cast<std::int64_t>(q)))
            watkins::fail(watkins::ErrorCode::InvalidArgument, std::to_string(q) + " is not prime");
        *a_q = watkins::a_q(curve->model, q);
    });
}

wk_status wk_coeffs_expand(const wk_curve* curve, int64_t bound, unsigned threads, wk_coeffs** out) {
    return guard([&] {
        require(curve, "curve");
        require(out, "out");
        if (bound < 1) watkins::fail(watkins::ErrorCode::InvalidArgument, "bound must be positive");
        if (bound > watkins::kDefaultPointCountCeiling)
            watkins::fail(watkins::ErrorCode::OutOfRange, "bound exceeds 1000000");
        *out = new wk_coeffs{watkins::expand(curve->model, bound, threads)};
    });
}

void wk_coeffs_free(wk_coeffs* coeffs) { delete coeffs; }

int64_t wk_coeffs_bound(const wk_coeffs* coeffs) { return coeffs ? coeffs->table.bound() : 0; }

wk_status wk_coeffs_get(const wk_coeffs* coeffs, int64_t n, int64_t* a_n) {
    return guard([&] {
        require(coeffs, "coeffs");
        require(a_n, "a_n");
        *a_n = coeffs->table.at(n);
    });
}

wk_status wk_coeffs_csv(const wk_coeffs* coeffs, char** csv) {
    return guard([&] {
        require(coeffs, "coeffs");
        require(csv, "csv");
        std::ostringstream out;
        out << "n,a_n\n";
        for (std::int64_t n = 1; n <= coeffs->table.bound(); ++n) out << n << ',' << coeffs->table[n] << '\n';
        *csv = dup(out.str());
    });
}

wk_status wk_watkins_verdict_json(const wk_bundle* bundle, const wk_curve* curve, const char* d, char** json) {
    return guard([&] {
        require(bundle, "bundle");
        require(curve, "curve");
        require(json, "json");
        const watkins::Integer D = integer_arg(d, "d");
        const auto classified = watkins::classify_model(curve->model, bundle->bundle);
        *json = dup(watkins::to_json(watkins::watkins_verdict(classified, D, bundle->bundle)));
    });
}

wk_status wk_petersson_json(const wk_bundle* bundle, const wk_curve* curve, const char* d, int refined, char** json) {
    return guard([&] {
        require(bundle, "bundle");
        require(curve, "curve");
        require(json, "json");
        const watkins::TwistParameter twist(integer_arg(d, "d"));
        const auto classified = watkins::classify_model(curve->model, bundle->bundle);
        const auto pb = watkins::petersson_val_lower(
            classified, twist, refined ? watkins::PeterssonMode::Refined : watkins::PeterssonMode::Cased);
        nlohmann::ordered_json j;
        j["curve"] = classified.id;
        j["D"] = watkins::to_string(twist.value());
        j["mode"] = refined ? "refined" : "cased";
        j["petersson"] = pb.value;
        j["case"] = watkins::to_string(pb.tag);
        *json = dup(j.dump());
    });
}

wk_status wk_rank_upper_dx(const char* d, long* bound) {
    return guard([&] {
        require(bound, "bound");
        *bound = watkins::rank_upper_dx(integer_arg(d, "d"));
    });
}

wk_status wk_verify_tables_json(const wk_bundle* bundle, const char* setzer_limit, char** json, int* ok) {
    return guard([&] {
        require(bundle, "bundle");
        require(json, "json");
        const watkins::Integer limit = setzer_limit ? watkins::parse_integer(setzer_limit) : watkins::Integer(10000);
        const auto report = watkins::verify_tables(bundle->bundle, limit);
        *json = dup(watkins::to_json(report));
        set_ok(ok, report.all_ok());
    });
}

wk_status wk_verify_congruence_json(const char* d, int64_t bound, unsigned threads, char** json, int* ok) {
    return guard([&] {
        require(json, "json");
        const auto report = watkins::verify_theorem(integer_arg(d, "d"), bound, threads);
        *json = dup(watkins::to_json(report));
        set_ok(ok, report.passed());
    });
}

wk_status wk_verify_lemmas_json(const char* const* ds, size_t count, int64_t q_max, char** json, int* ok) {
    return guard([&] {
        require(json, "json");
        if (count > 0) require(ds, "ds");
        if (q_max < 3) watkins::fail(watkins::ErrorCode::InvalidArgument, "q_max must be at least 3");
        std::vector<watkins::CongruenceLemmaResult> results;
        const auto primes = watkins::primes_up_to(q_max);
        for (size_t i = 0; i < count; ++i) {
            const watkins::Integer d = integer_arg(ds[i], "d");
            for (const auto q : primes) {
                if (q == 2 || watkins::nu(q, d) > 0) continue;
                for (unsigned k : {1u, 3u}) results.push_back(watkins::congruence_lemma_check(d, q, k));
            }
        }
        *json = dup(watkins::to_json(results));
        bool all = true;
        for (const auto& r : results) all = all && r.ok();
        set_ok(ok, all);
    });
}

wk_status wk_verify_conductor_family_json(const char* d, char** json, int* ok) {
    return guard([&] {
        require(json, "json");
        const auto result = watkins::conductor_family_check(integer_arg(d, "d"));
        *json = dup(watkins::to_json(result));
        set_ok(ok, result.ok);
    });
}

wk_status wk_watkins_sweep_json(const wk_bundle* bundle, long max_abs_d, unsigned threads, char** json, int* ok) {
    return guard([&] {
        require(bundle, "bundle");
        require(json, "json");
        const auto sweep = watkins::watkins_sweep(bundle->bundle, max_abs_d, threads);
        const std::string text = watkins::to_json(sweep, max_abs_d);
        set_ok(ok, nlohmann::json::parse(text).at("ok").get<bool>());
        *json = dup(text);
    });
}

wk_status wk_corollary_json(const char* p, int64_t bound, char** json, int* ok) {
    return guard([&] {
        require(json, "json");
        const auto result = watkins::corollary_check(integer_arg(p, "p"), bound);
        *json = dup(watkins::to_json(result));
        set_ok(ok, result.ok);
    });
}

wk_status wk_setzer_pair_json(const char* p, char** json) {
    return guard([&] {
        require(json, "json");
        *json = dup(watkins::to_json(watkins::setzer_pair(integer_arg(p, "p"))));
    });
}

wk_status wk_setzer_primes_json(const char* limit, char** json) {
    return guard([&] {
        require(json, "json");
        nlohmann::json j = nlohmann::json::array();
        for (const auto& p : watkins::setzer_primes(integer_arg(limit, "limit"))) j.push_back(p.get_si());
        *json = dup(j.dump());
    });
}

} // extern "C"
