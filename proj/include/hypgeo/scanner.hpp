#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <hypgeo/analytic.hpp>
#include <hypgeo/criteria.hpp>
#include <hypgeo/rational.hpp>

namespace hypgeo {

struct ScanAxis {
    char name = 'd';
    Rational start;
    Rational stop;
    std::size_t steps = 1;

    // start + k (stop - start) / steps; the single value start when steps == 0.
    Rational value(std::size_t k) const;
    std::size_t count() const { return steps + 1; }
};

struct ScanOptions {
    bool run_lemmas = false;
    std::size_t lemma_length = 200;
    bool run_disk = false;
    GridSpec grid;
    Real tol = Real(1e-12);
    unsigned workers = 0; // 0: hardware concurrency
};

/// A 2-D slice of (a,b,c,d,e): three fixed names, two swept axes.
struct SliceSpec {
    std::map<char, Rational> fixed;
    std::array<ScanAxis, 2> axes;
    ScanOptions options;

    // Throws std::invalid_argument when the names do not cover a..e exactly
    // once, or an axis is malformed (start < stop and steps >= 1, or a
    // degenerate start == stop with steps == 0).
    void validate() const;

    std::size_t cell_count() const { return axes[0].count() * axes[1].count(); }

    // Raw parameter tuple of cell (i, j), in a, b, c, d, e order.
    std::array<Rational, 5> point(std::size_t i, std::size_t j) const;
};

enum class Classification { all_fail, predicate_only, predicate_and_empirical, empirical_only, invalid };

std::string_view to_string(Classification c);

struct EvidenceSummary {
    Real min_value;
    Real error_budget;
    bool positive;
};

struct CellRecord {
    std::array<Rational, 5> raw;         // a, b, c, d, e as scanned
    std::optional<ParameterSet> params;  // empty for invalid cells
    std::vector<PredicateVerdict> verdicts; // T1..T4, empty for invalid cells
    std::map<std::string, LemmaVerdict> lemma_results;
    std::map<std::string, EvidenceSummary> empirical;
    // Per conclusion ("T1".."T4"): every enabled empirical check affirmative.
    std::map<std::string, bool> empirical_support;
    Classification classification = Classification::invalid;

    const PredicateVerdict& verdict(Theorem t) const { return verdicts.at(static_cast<int>(t) - 1); }
};

struct ScanResult {
    SliceSpec spec;
    std::vector<CellRecord> cells; // row-major: axis 0 outer, axis 1 inner
    std::map<Classification, std::size_t> summary;
};

/// Named conditions for find_satisfying and reports.
///   thm1..thm4          stated predicate of the theorem
///   thm3_with_thm1      Theorem 3 together with Theorem 1's conditions
///   thm4_with_proof     Theorem 4 together with its proof conditions
bool condition_holds(const CellRecord& cell, std::string_view target);
bool is_known_condition(std::string_view target);

Classification classify(const CellRecord& cell);

/// Evaluates a single parameter tuple the way a scan cell is evaluated.
CellRecord evaluate_cell(const std::array<Rational, 5>& raw, const ScanOptions& options);

ScanResult run_scan(const SliceSpec& spec);

/// First cell in row-major order satisfying the named condition.
std::optional<ParameterSet> find_satisfying(const SliceSpec& spec, std::string_view target);

/// Column layout: a,b,c,d,e, then per theorem one column per part plus
/// "<thm>.overall", variant flags, optional lemma/empirical columns, and
/// classification last.
std::vector<std::string> csv_columns(const SliceSpec& spec);
std::string scan_to_csv(const ScanResult& result);
std::string scan_to_json(const ScanResult& result);

} // namespace hypgeo
