#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <hypgeo/rational.hpp>
#include <hypgeo/series.hpp>

namespace hypgeo {

enum class Theorem { T1 = 1, T2, T3, T4 };

std::string_view to_string(Theorem t);
Theorem parse_theorem(std::string_view text);

enum class Relation { ge, le };

std::string_view to_string(Relation r);

// One sub-inequality `lhs relation rhs` of a sufficient condition.
struct PredicatePart {
    std::string key;  // stable identifier, used as CSV column suffix
    std::string name; // human-readable form, e.g. "d+e >= T2"
    Rational lhs;
    Rational rhs;
    Relation relation = Relation::ge;
    bool satisfied = false;
};

PredicatePart make_part(std::string key, std::string name, Rational lhs, Rational rhs,
                        Relation relation = Relation::ge);

struct PredicateVerdict {
    Theorem theorem;
    ParameterSet params;
    bool overall = false;
    std::vector<PredicatePart> parts;
    // Named alternative condition sets, e.g. "with_thm1" for Theorem 3.
    std::map<std::string, bool> variant_flags;

    // First part that is not satisfied, if any.
    const PredicatePart* first_failure() const;
};

/// Sufficient condition for z 3F2 to be close-to-convex w.r.t. -log(1-z).
PredicateVerdict thm1_predicate(const ParameterSet& p);
/// Sufficient condition for z 3F2(...; z^2) to be close-to-convex w.r.t. atanh.
PredicateVerdict thm2_predicate(const ParameterSet& p);
/// Sufficient condition for z 3F2 to be in KS*. Variant "with_thm1" adds the
/// Theorem 1 conditions its proof relies on.
PredicateVerdict thm3_predicate(const ParameterSet& p);
/// Sufficient condition for the Alexander transform to be in KS*. Variant
/// "proof_conditions" records de >= abc and d+e >= ab+bc+ca-abc.
PredicateVerdict thm4_predicate(const ParameterSet& p);

PredicateVerdict theorem_predicate(Theorem t, const ParameterSet& p);

// Right-hand side polynomials of the conditions. T3 returns {T1, T2, T3, T4, T}; T4 returns
// {T1, T2, T3, T}. Exposed for tests and reports.
std::vector<Rational> thm3_polynomials(const ParameterSet& p);
std::vector<Rational> thm4_polynomials(const ParameterSet& p);

enum class Lemma { fejer, ozaki, ozaki_odd };
enum class ChainBranch { non_increasing, non_decreasing_bounded_2 };

std::string_view to_string(Lemma l);
std::string_view to_string(ChainBranch b);

struct LemmaVerdict {
    Lemma lemma;
    bool holds = false;
    std::optional<ChainBranch> branch;
    // 1-based index n of the earliest failing comparison (for the two-chain
    // lemmas: where the last surviving chain breaks).
    std::optional<std::size_t> first_violation_index;
    std::size_t checked_length = 0;
};

/// A_n >= 0 with {n A_n} and {n A_n - (n+1) A_{n+1}} non-increasing.
LemmaVerdict check_fejer(const CoefficientSequence& seq);
/// 1 >= 2A_2 >= ... >= nA_n >= 0, or 1 <= 2A_2 <= ... <= nA_n <= 2.
LemmaVerdict check_ozaki(const CoefficientSequence& seq);
/// Same two chains over (2n+1) A_{2n+1}; needs an odd_embedded sequence.
LemmaVerdict check_ozaki_odd(const CoefficientSequence& seq);

/// The proof polynomial of the given theorem at n (compact product form):
/// T1 -> U(n), T2 -> X(n), T3 -> P(n), T4 -> C(n).
Rational proof_poly(Theorem t, const ParameterSet& p, std::size_t n);

// U(n) = n(d+n-1)(e+n-1) - (a+n-1)(b+n-1)(c+n-1), the first-difference
// polynomial of the Alexander transform; C(n) is built from it.
Rational alexander_u(const ParameterSet& p, std::size_t n);

// Denominator pairing proof_poly with the coefficient difference it governs.
Rational proof_denominator(Theorem t, const ParameterSet& p, std::size_t n);

struct PolyValue {
    std::size_t n;
    Rational value;
    bool nonneg;
};

struct ProofAuditReport {
    Theorem theorem;
    ParameterSet params;
    std::size_t first = 1;
    std::size_t last = 0;
    bool identity_ok = false;
    // Indices where the identity failed (empty when identity_ok).
    std::vector<std::size_t> mismatches;
    std::vector<PolyValue> nonnegativity;

    bool all_nonneg() const;
};

/// Checks, for 1 <= n <= N, that the coefficient difference computed from the
/// series equals A_n * proof_poly(n) / proof_denominator(n) exactly.
ProofAuditReport proof_identity_audit(Theorem t, const ParameterSet& p, std::size_t N);

} // namespace hypgeo
