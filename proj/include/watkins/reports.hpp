#pragma once

#include <string>
#include <vector>

#include "watkins/bounds.hpp"
#include "watkins/congruence.hpp"
#include "watkins/ec_models.hpp"
#include "watkins/families.hpp"
#include "watkins/local_data.hpp"

// JSON serialization. Integers that fit in 64 bits are JSON numbers, larger
// ones are decimal strings; non-integral rationals are "n/d" strings and
// infinite valuations are "inf".
namespace watkins {

std::string to_json(const Invariants& inv);
std::string to_json(const Signature& sig);
std::string to_json(const LocalReduction& local);
std::string to_json(const Conductor& n);
std::string to_json(const SetzerPair& pair);
std::string to_json(const TablesReport& report);

std::string to_json(const WatkinsReport& report);
WatkinsReport watkins_report_from_json(const std::string& text);

std::string to_json(const CongruenceReport& report);
CongruenceReport congruence_report_from_json(const std::string& text);

std::string to_json(const std::vector<SweepEntry>& sweep, long max_abs_d);
std::string to_json(const std::vector<CongruenceLemmaResult>& results);
std::string to_json(const ConductorFamilyResult& result);
std::string to_json(const CorollaryResult& result);

} // namespace watkins
