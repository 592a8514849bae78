#pragma once

#include <string>

#include <json.hpp>

#include <hypgeo/analytic.hpp>
#include <hypgeo/criteria.hpp>
#include <hypgeo/series.hpp>

namespace hypgeo {

// Rationals serialize as "p/q" strings, reals with 17 significant digits.
std::string format_real(const Real& x, int digits = 17);

nlohmann::ordered_json to_json(const Rational& q);
nlohmann::ordered_json to_json(const ParameterSet& p);
nlohmann::ordered_json to_json(const CoefficientSequence& seq);
nlohmann::ordered_json to_json(const PredicateVerdict& v);
nlohmann::ordered_json to_json(const LemmaVerdict& v);
nlohmann::ordered_json to_json(const ProofAuditReport& r);
nlohmann::ordered_json to_json(const EvalResult& r);
nlohmann::ordered_json to_json(const DiskEvidence& e);

} // namespace hypgeo
