#include <hypgeo/scanner.hpp>

#include <algorithm>
#include <atomic>
#include <limits>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <hypgeo/report.hpp>

namespace hypgeo {

namespace {

constexpr std::array<char, 5> parameter_names = {'a', 'b', 'c', 'd', 'e'};
constexpr std::array<Theorem, 4> all_theorems = {Theorem::T1, Theorem::T2, Theorem::T3, Theorem::T4};

int slot_of(char name)
{
    const auto it = std::find(parameter_names.begin(), parameter_names.end(), name);
    if (it == parameter_names.end()) {
        throw std::invalid_argument(std::string("unknown parameter name '") + name + "'");
    }
    return static_cast<int>(it - parameter_names.begin());
}

std::string theorem_prefix(Theorem t)
{
    return "thm" + std::to_string(static_cast<int>(t));
}

} // namespace

Rational ScanAxis::value(std::size_t k) const
{
    Rational step(static_cast<unsigned long>(k), static_cast<unsigned long>(steps == 0 ? 1 : steps));
    step.canonicalize();
    Rational out = steps == 0 ? Rational(start) : Rational(start + (stop - start) * step);
    out.canonicalize();
    return out;
}

void SliceSpec::validate() const
{
    std::set<char> seen;
    auto claim = [&](char name) {
        slot_of(name);
        if (!seen.insert(name).second) {
            throw std::invalid_argument(std::string("parameter '") + name + "' given twice");
        }
    };
    for (const auto& [name, value] : fixed) {
        claim(name);
    }
    for (const auto& axis : axes) {
        claim(axis.name);
        if (axis.steps == 0) {
            if (axis.start != axis.stop) {
                throw std::invalid_argument("axis with zero steps needs start == stop");
            }
        } else if (!(axis.start < axis.stop)) {
            throw std::invalid_argument("axis start must be below stop");
        }
    }
    if (seen.size() != parameter_names.size()) {
        throw std::invalid_argument("slice must cover a, b, c, d, e exactly once");
    }
}

std::array<Rational, 5> SliceSpec::point(std::size_t i, std::size_t j) const
{
    std::array<Rational, 5> raw;
    for (const auto& [name, value] : fixed) {
        raw[slot_of(name)] = value;
    }
    raw[slot_of(axes[0].name)] = axes[0].value(i);
    raw[slot_of(axes[1].name)] = axes[1].value(j);
    return raw;
}

std::string_view to_string(Classification c)
{
    switch (c) {
    case Classification::all_fail:
        return "all-fail";
    case Classification::predicate_only:
        return "predicate-only";
    case Classification::predicate_and_empirical:
        return "predicate+empirical";
    case Classification::empirical_only:
        return "empirical-only";
    case Classification::invalid:
        return "invalid";
    }
    return "?";
}

bool is_known_condition(std::string_view target)
{
    static const std::set<std::string_view> known = {"thm1", "thm2", "thm3", "thm4",
                                                     "thm3_with_thm1", "thm4_with_proof"};
    return known.contains(target);
}

bool condition_holds(const CellRecord& cell, std::string_view target)
{
    if (!is_known_condition(target)) {
        throw std::invalid_argument("unknown condition '" + std::string(target) + "'");
    }
    if (!cell.params) {
        return false;
    }
    if (target == "thm1") {
        return cell.verdict(Theorem::T1).overall;
    }
    if (target == "thm2") {
        return cell.verdict(Theorem::T2).overall;
    }
    if (target == "thm3") {
        return cell.verdict(Theorem::T3).overall;
    }
    if (target == "thm4") {
        return cell.verdict(Theorem::T4).overall;
    }
    if (target == "thm3_with_thm1") {
        return cell.verdict(Theorem::T3).variant_flags.at("with_thm1");
    }
    const auto& v4 = cell.verdict(Theorem::T4);
    return v4.overall && v4.variant_flags.at("proof_conditions");
}

Classification classify(const CellRecord& cell)
{
    if (!cell.params) {
        return Classification::invalid;
    }
    const bool predicate = std::any_of(cell.verdicts.begin(), cell.verdicts.end(),
                                       [](const PredicateVerdict& v) { return v.overall; });
    const bool empirical = std::any_of(cell.empirical_support.begin(), cell.empirical_support.end(),
                                       [](const auto& kv) { return kv.second; });
    if (predicate) {
        return empirical ? Classification::predicate_and_empirical : Classification::predicate_only;
    }
    return empirical ? Classification::empirical_only : Classification::all_fail;
}

namespace {

void add_lemmas(CellRecord& cell, const ParameterSet& p, std::size_t length)
{
    const auto normalized = build_sequence(p, length, SequenceKind::normalized);
    const auto odd = build_sequence(p, length, SequenceKind::odd_embedded);
    const auto alexander = build_sequence(p, length, SequenceKind::alexander);
    cell.lemma_results.emplace("fejer_normalized", check_fejer(normalized));
    cell.lemma_results.emplace("ozaki_normalized", check_ozaki(normalized));
    cell.lemma_results.emplace("ozaki_odd", check_ozaki_odd(odd));
    cell.lemma_results.emplace("fejer_alexander", check_fejer(alexander));
    cell.lemma_results.emplace("ozaki_alexander", check_ozaki(alexander));
}

void add_disk(CellRecord& cell, const ParameterSet& p, const ScanOptions& options)
{
    const EvidenceOptions single{1, max_terms_from_env()};
    auto record = [&](SequenceKind kind, std::span<const Functional> fns, std::string_view suffix) {
        const auto seq = build_sequence(p, 2, kind);
        try {
            const auto evs = disk_minima(seq, fns, options.grid, options.tol, single);
            for (const auto& ev : evs) {
                cell.empirical.emplace(std::string(to_string(ev.functional)) + "_" + std::string(suffix),
                                       EvidenceSummary{ev.min_value, ev.error_budget, ev.positive});
            }
        } catch (const std::runtime_error&) {
            // tail bound or degenerate grid: no evidence either way
            for (const auto fn : fns) {
                cell.empirical.emplace(std::string(to_string(fn)) + "_" + std::string(suffix),
                                       EvidenceSummary{std::numeric_limits<Real>::quiet_NaN(),
                                                       std::numeric_limits<Real>::infinity(),
                                                       false});
            }
        }
    };
    const Functional ks[] = {Functional::ctc_log, Functional::starlike};
    const Functional atanh[] = {Functional::ctc_atanh};
    record(SequenceKind::normalized, ks, "normalized");
    record(SequenceKind::odd_embedded, atanh, "odd");
    record(SequenceKind::alexander, ks, "alexander");
}

// Conjunction of the enabled checks behind each theorem's conclusion.
void add_support(CellRecord& cell, const ScanOptions& options)
{
    if (!options.run_lemmas && !options.run_disk) {
        return;
    }
    auto lemma = [&](const char* name) {
        return !options.run_lemmas || cell.lemma_results.at(name).holds;
    };
    auto disk = [&](const char* name) {
        return !options.run_disk || cell.empirical.at(name).positive;
    };
    cell.empirical_support["T1"] = lemma("ozaki_normalized") && disk("ctc_log_normalized");
    cell.empirical_support["T2"] = lemma("ozaki_odd") && disk("ctc_atanh_odd");
    cell.empirical_support["T3"] = lemma("fejer_normalized") && lemma("ozaki_normalized")
                                   && disk("ctc_log_normalized") && disk("starlike_normalized");
    cell.empirical_support["T4"] = lemma("fejer_alexander") && lemma("ozaki_alexander")
                                   && disk("ctc_log_alexander") && disk("starlike_alexander");
}

} // namespace

CellRecord evaluate_cell(const std::array<Rational, 5>& raw, const ScanOptions& options)
{
    CellRecord cell;
    cell.raw = raw;
    const auto& [a, b, c, d, e] = raw;
    if (!(a > 0 && b > 0 && c > 0 && d > 0 && e > 0)) {
        cell.classification = Classification::invalid;
        return cell;
    }
    const auto p = ParameterSet::make(a, b, c, d, e);
    cell.params = p;
    for (const auto t : all_theorems) {
        cell.verdicts.push_back(theorem_predicate(t, p));
    }
    if (options.run_lemmas) {
        add_lemmas(cell, p, std::max<std::size_t>(options.lemma_length, 3));
    }
    if (options.run_disk) {
        add_disk(cell, p, options);
    }
    add_support(cell, options);
    cell.classification = classify(cell);
    return cell;
}

ScanResult run_scan(const SliceSpec& spec)
{
    spec.validate();
    ScanResult result{spec, {}, {}};
    const std::size_t n1 = spec.axes[0].count();
    const std::size_t n2 = spec.axes[1].count();
    const std::size_t total = n1 * n2;
    result.cells.resize(total);

    auto run_cell = [&](std::size_t idx) {
        result.cells[idx] = evaluate_cell(spec.point(idx / n2, idx % n2), spec.options);
    };

    unsigned workers = spec.options.workers != 0 ? spec.options.workers
                                                 : std::thread::hardware_concurrency();
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(total)));
    if (workers == 1) {
        for (std::size_t idx = 0; idx < total; ++idx) {
            run_cell(idx);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        {
            std::vector<std::jthread> pool;
            for (unsigned w = 0; w < workers; ++w) {
                pool.emplace_back([&] {
                    for (std::size_t idx = next++; idx < total; idx = next++) {
                        try {
                            run_cell(idx);
                        } catch (...) {
                            std::lock_guard lock(failure_mutex);
                            if (!failure) {
                                failure = std::current_exception();
                            }
                        }
                    }
                });
            }
        }
        if (failure) {
            std::rethrow_exception(failure);
        }
    }

    for (const auto c : {Classification::all_fail, Classification::predicate_only,
                         Classification::predicate_and_empirical, Classification::empirical_only,
                         Classification::invalid}) {
        result.summary[c] = 0;
    }
    for (const auto& cell : result.cells) {
        ++result.summary[cell.classification];
    }
    return result;
}

std::optional<ParameterSet> find_satisfying(const SliceSpec& spec, std::string_view target)
{
    spec.validate();
    if (!is_known_condition(target)) {
        throw std::invalid_argument("unknown condition '" + std::string(target) + "'");
    }
    ScanOptions predicates_only;
    for (std::size_t i = 0; i < spec.axes[0].count(); ++i) {
        for (std::size_t j = 0; j < spec.axes[1].count(); ++j) {
            const auto cell = evaluate_cell(spec.point(i, j), predicates_only);
            if (condition_holds(cell, target)) {
                return cell.params;
            }
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

const std::vector<std::string> lemma_names = {"fejer_normalized", "ozaki_normalized", "ozaki_odd",
                                              "fejer_alexander", "ozaki_alexander"};
const std::vector<std::string> evidence_names = {"ctc_log_normalized", "starlike_normalized",
                                                 "ctc_atanh_odd", "ctc_log_alexander",
                                                 "starlike_alexander"};

// Part keys per theorem; independent of the parameter values.
const std::vector<std::vector<std::string>>& part_keys()
{
    static const auto keys = [] {
        const auto probe = ParameterSet::make(1, 1, 1, 1, 1);
        std::vector<std::vector<std::string>> out;
        for (const auto t : all_theorems) {
            std::vector<std::string> k;
            for (const auto& part : theorem_predicate(t, probe).parts) {
                k.push_back(part.key);
            }
            out.push_back(std::move(k));
        }
        return out;
    }();
    return keys;
}

const char* flag(bool b)
{
    return b ? "true" : "false";
}

} // namespace

std::vector<std::string> csv_columns(const SliceSpec& spec)
{
    std::vector<std::string> cols = {"a", "b", "c", "d", "e"};
    for (const auto t : all_theorems) {
        const auto prefix = theorem_prefix(t);
        for (const auto& key : part_keys()[static_cast<int>(t) - 1]) {
            cols.push_back(prefix + "." + key);
        }
        cols.push_back(prefix + ".overall");
        if (t == Theorem::T3) {
            cols.push_back("thm3.with_thm1");
        }
        if (t == Theorem::T4) {
            cols.push_back("thm4.proof_conditions");
        }
    }
    if (spec.options.run_lemmas) {
        for (const auto& name : lemma_names) {
            cols.push_back("lemma." + name);
        }
    }
    if (spec.options.run_disk) {
        for (const auto& name : evidence_names) {
            cols.push_back("disk." + name);
        }
    }
    cols.push_back("classification");
    return cols;
}

std::string scan_to_csv(const ScanResult& result)
{
    std::ostringstream out;
    const auto cols = csv_columns(result.spec);
    for (std::size_t i = 0; i < cols.size(); ++i) {
        out << (i ? "," : "") << cols[i];
    }
    out << '\n';
    for (const auto& cell : result.cells) {
        std::vector<std::string> row;
        for (const auto& v : cell.raw) {
            row.push_back(to_string(v));
        }
        const bool valid = cell.params.has_value();
        for (const auto t : all_theorems) {
            const std::size_t parts = part_keys()[static_cast<int>(t) - 1].size();
            if (!valid) {
                row.insert(row.end(), parts + 1 + (t == Theorem::T3 || t == Theorem::T4), "");
                continue;
            }
            const auto& v = cell.verdict(t);
            for (const auto& part : v.parts) {
                row.emplace_back(flag(part.satisfied));
            }
            row.emplace_back(flag(v.overall));
            if (t == Theorem::T3) {
                row.emplace_back(flag(v.variant_flags.at("with_thm1")));
            }
            if (t == Theorem::T4) {
                row.emplace_back(flag(v.variant_flags.at("proof_conditions")));
            }
        }
        if (result.spec.options.run_lemmas) {
            for (const auto& name : lemma_names) {
                row.emplace_back(valid ? flag(cell.lemma_results.at(name).holds) : "");
            }
        }
        if (result.spec.options.run_disk) {
            for (const auto& name : evidence_names) {
                row.emplace_back(valid ? flag(cell.empirical.at(name).positive) : "");
            }
        }
        row.emplace_back(to_string(cell.classification));
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << row[i];
        }
        out << '\n';
    }
    return out.str();
}

std::string scan_to_json(const ScanResult& result)
{
    using json = nlohmann::ordered_json;
    const auto& spec = result.spec;

    json fixed = json::object();
    for (const auto& [name, value] : spec.fixed) {
        fixed[std::string(1, name)] = to_string(value);
    }
    json axes = json::array();
    for (const auto& axis : spec.axes) {
        axes.push_back({{"name", std::string(1, axis.name)},
                        {"start", to_string(axis.start)},
                        {"stop", to_string(axis.stop)},
                        {"steps", axis.steps}});
    }
    json options = {{"run_lemmas", spec.options.run_lemmas},
                    {"lemma_length", spec.options.lemma_length},
                    {"run_disk", spec.options.run_disk}};
    if (spec.options.run_disk) {
        options["grid"] = {{"n_r", spec.options.grid.n_r},
                           {"n_theta", spec.options.grid.n_theta},
                           {"r_max", to_string(spec.options.grid.r_max)}};
        options["tol"] = format_real(spec.options.tol);
    }

    json cells = json::array();
    for (const auto& cell : result.cells) {
        json c;
        c["params"] = {{"a", to_string(cell.raw[0])}, {"b", to_string(cell.raw[1])},
                       {"c", to_string(cell.raw[2])}, {"d", to_string(cell.raw[3])},
                       {"e", to_string(cell.raw[4])}};
        c["valid"] = cell.params.has_value();
        json verdicts = json::array();
        for (const auto& v : cell.verdicts) {
            auto jv = to_json(v);
            jv.erase("params");
            verdicts.push_back(std::move(jv));
        }
        c["verdicts"] = std::move(verdicts);
        if (!cell.lemma_results.empty()) {
            json lemmas = json::object();
            for (const auto& [name, v] : cell.lemma_results) {
                lemmas[name] = to_json(v);
            }
            c["lemma_results"] = std::move(lemmas);
        }
        if (!cell.empirical.empty()) {
            json emp = json::object();
            for (const auto& [name, s] : cell.empirical) {
                emp[name] = {{"min_value", format_real(s.min_value)},
                             {"error_budget", format_real(s.error_budget)},
                             {"positive", s.positive}};
            }
            c["empirical"] = std::move(emp);
        }
        if (!cell.empirical_support.empty()) {
            json sup = json::object();
            for (const auto& [name, v] : cell.empirical_support) {
                sup[name] = v;
            }
            c["empirical_support"] = std::move(sup);
        }
        c["classification"] = std::string(to_string(cell.classification));
        cells.push_back(std::move(c));
    }

    json summary = json::object();
    for (const auto& [cls, count] : result.summary) {
        summary[std::string(to_string(cls))] = count;
    }

    json doc = {{"spec", {{"fixed", std::move(fixed)}, {"axes", std::move(axes)}, {"options", std::move(options)}}},
                {"cells", std::move(cells)},
                {"summary", std::move(summary)}};
    return doc.dump(2) + "\n";
}

} // namespace hypgeo
