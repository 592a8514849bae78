#include <hypgeo/report.hpp>

#include <cstdio>
#include <limits>

#include <quadmath.h>

namespace hypgeo {

std::string format_real(const Real& x, int digits)
{
    const __float128 v = x.backend().value();
    if (isinfq(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[128];
    quadmath_snprintf(buf, sizeof buf, "%.*Qg", digits, v);
    return buf;
}

nlohmann::ordered_json to_json(const Rational& q)
{
    return to_string(q);
}

nlohmann::ordered_json to_json(const ParameterSet& p)
{
    return {{"a", to_string(p.a())}, {"b", to_string(p.b())}, {"c", to_string(p.c())},
            {"d", to_string(p.d())}, {"e", to_string(p.e())}};
}

nlohmann::ordered_json to_json(const CoefficientSequence& seq)
{
    nlohmann::ordered_json values = nlohmann::ordered_json::array();
    for (const auto& v : seq.values()) {
        values.push_back(to_string(v));
    }
    nlohmann::ordered_json j;
    if (seq.params()) {
        j["params"] = to_json(*seq.params());
    }
    j["kind"] = std::string(to_string(seq.kind()));
    j["length"] = seq.size();
    j["values"] = std::move(values);
    return j;
}

nlohmann::ordered_json to_json(const PredicateVerdict& v)
{
    nlohmann::ordered_json parts = nlohmann::ordered_json::array();
    for (const auto& p : v.parts) {
        parts.push_back({{"key", p.key},
                         {"name", p.name},
                         {"lhs", to_string(p.lhs)},
                         {"relation", std::string(to_string(p.relation))},
                         {"rhs", to_string(p.rhs)},
                         {"satisfied", p.satisfied}});
    }
    nlohmann::ordered_json flags = nlohmann::ordered_json::object();
    for (const auto& [name, value] : v.variant_flags) {
        flags[name] = value;
    }
    return {{"theorem", std::string(to_string(v.theorem))},
            {"params", to_json(v.params)},
            {"overall", v.overall},
            {"parts", std::move(parts)},
            {"variant_flags", std::move(flags)}};
}

nlohmann::ordered_json to_json(const LemmaVerdict& v)
{
    nlohmann::ordered_json j{{"lemma", std::string(to_string(v.lemma))}, {"holds", v.holds}};
    j["branch"] = v.branch ? nlohmann::ordered_json(std::string(to_string(*v.branch)))
                           : nlohmann::ordered_json(nullptr);
    j["first_violation_index"] = v.first_violation_index
                                     ? nlohmann::ordered_json(*v.first_violation_index)
                                     : nlohmann::ordered_json(nullptr);
    j["checked_length"] = v.checked_length;
    return j;
}

nlohmann::ordered_json to_json(const ProofAuditReport& r)
{
    nlohmann::ordered_json values = nlohmann::ordered_json::array();
    for (const auto& v : r.nonnegativity) {
        values.push_back({{"n", v.n}, {"value", to_string(v.value)}, {"nonneg", v.nonneg}});
    }
    return {{"theorem", std::string(to_string(r.theorem))},
            {"params", to_json(r.params)},
            {"range", {r.first, r.last}},
            {"identity_ok", r.identity_ok},
            {"mismatches", r.mismatches},
            {"all_nonneg", r.all_nonneg()},
            {"nonnegativity", std::move(values)}};
}

nlohmann::ordered_json to_json(const EvalResult& r)
{
    return {{"value", {{"re", format_real(real(r.value))}, {"im", format_real(imag(r.value))}}},
            {"truncation_bound", format_real(r.truncation_bound)},
            {"terms_used", r.terms_used}};
}

nlohmann::ordered_json to_json(const DiskEvidence& e)
{
    return {{"functional", std::string(to_string(e.functional))},
            {"grid",
             {{"n_r", e.grid.n_r}, {"n_theta", e.grid.n_theta}, {"r_max", to_string(e.grid.r_max)}}},
            {"min_value", format_real(e.min_value)},
            {"argmin",
             {{"re", format_real(e.argmin.re)},
              {"im", format_real(e.argmin.im)},
              {"r_index", e.argmin_r_index},
              {"theta_index", e.argmin_theta_index}}},
            {"error_budget", format_real(e.error_budget)},
            {"positive", e.positive},
            {"evaluated_nodes", e.evaluated_nodes},
            {"skipped_nodes", e.skipped_nodes}};
}

} // namespace hypgeo
