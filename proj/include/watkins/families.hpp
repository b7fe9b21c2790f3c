#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "watkins/arith.hpp"
#include "watkins/ec_models.hpp"

namespace watkins {

struct CurveRecord {
    std::string label; // LMFDB-style, e.g. "32.a3"
    WeierstrassModel model;
    Integer m_E; // modular degree (trusted data)
    Integer c_E; // Manin constant (trusted data)
    Factorization disc;

    Integer label_conductor() const;
};

// Immutable set of curve records, validated on load: the stored discriminant
// must equal the recomputed one and the conductor must match the label.
class CurveBundle {
public:
    // CSV columns: label,a1,a2,a3,a4,a6,mE,cE,disc. Lines starting with '#'
    // are comments; a header row starting with "label" is skipped.
    static CurveBundle parse(std::string_view csv, const std::string& source = "<memory>");
    static CurveBundle load_file(const std::string& path);
    static const CurveBundle& bundled();
    // The file named by WATKINS_DATA when set, otherwise bundled().
    static CurveBundle load_default();

    const std::vector<CurveRecord>& records() const { return records_; }
    const std::string& source() const { return source_; }
    const CurveRecord& lookup(const std::string& label) const;
    // Match by minimal model; nullptr if absent.
    const CurveRecord* find_model(const WeierstrassModel& model) const;

private:
    std::vector<CurveRecord> records_;
    std::string source_;
};

struct SetzerPair {
    Integer p, u;              // p = u² + 64, u ≡ 1 (mod 4)
    WeierstrassModel curve_a1; // [1,(u−1)/4,0,−1,0], Δ = p
    WeierstrassModel curve_a2; // [1,(u−1)/4,0,4,u], Δ = −p², the X0(p)-optimal curve
};

SetzerPair setzer_pair(const Integer& p);
// Primes p = u² + 64 below limit, ascending.
std::vector<Integer> setzer_primes(const Integer& limit);

// The curves of conductor 2^6 and 2^8: twists by 2 of the bundled 32 and 128 curves.
struct DerivedCurve {
    std::string label; // e.g. "32.a3^(2)"
    WeierstrassModel model;
};
std::vector<DerivedCurve> twists_by_two(const CurveBundle& bundle);

// Families for which the twist bounds are classified.
enum class Family {
    OddPrimePower, // conductor p or p², p odd (Setzer, 17.a1–a3, 49.*)
    Curve17a4,
    TwoPower,  // conductor 32 or 128 other than 32.a3
    Curve32a3,
};

struct ClassifiedCurve {
    std::string id;
    WeierstrassModel model; // minimal
    Integer prime;          // conductor = prime^exponent
    unsigned exponent = 0;
    Family family = Family::OddPrimePower;
    long v2_m_over_c2 = 0; // ν₂(m_E/c_E²), or the lower bound −1 for Setzer curves
    bool v2_is_bound = false;
};

ClassifiedCurve classify(const CurveRecord& record);
// which = 1 for p.a1, 2 for p.a2
ClassifiedCurve classify_setzer(const Integer& p, int which);
// Bundle records first, then the Setzer shape; ErrorCode::Precondition otherwise.
ClassifiedCurve classify_model(const WeierstrassModel& model, const CurveBundle& bundle);

// Reference data transcribed verbatim from the published tables.
struct PrintedSignatureRow {
    std::string label;
    Integer c4, c6;
    ExtNat v_c4, v_c6, v_disc;
};
const std::vector<PrintedSignatureRow>& printed_signature_table();

struct PrintedDiscriminant {
    std::string label;
    std::string disc;
};
const std::vector<PrintedDiscriminant>& printed_discriminants();

struct TableCheck {
    std::string group;   // "discriminant", "conductor", "two-torsion", "signature", "setzer", ...
    std::string subject; // label or p
    std::string expected;
    std::string actual;
    bool ok = false;
};

struct TablesReport {
    std::vector<TableCheck> checks;
    std::vector<std::string> unchecked; // trusted, not recomputable here
    std::size_t setzer_primes_checked = 0;

    bool all_ok() const;
    std::vector<TableCheck> failures() const;
};

TablesReport verify_tables(const CurveBundle& bundle, const Integer& setzer_limit = Integer(10000));

} // namespace watkins
