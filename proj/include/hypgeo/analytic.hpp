#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/complex128.hpp>
#include <boost/multiprecision/float128.hpp>

#include <hypgeo/rational.hpp>
#include <hypgeo/series.hpp>

namespace hypgeo {

// Quad precision, about 34 significant decimal digits.
using Real = boost::multiprecision::float128;
using Complex = boost::multiprecision::complex128;

// Correctly scaled conversion; safe for numerators and denominators far
// outside the float128 exponent range as long as the quotient is inside it.
Real to_real(const Rational& q);

struct ComplexPoint {
    Real re = 0;
    Real im = 0;

    static ComplexPoint from(const Rational& re, const Rational& im)
    {
        return {to_real(re), to_real(im)};
    }
    static ComplexPoint polar(const Real& r, const Real& theta);

    Complex value() const { return Complex(re, im); }
    Real modulus() const;
};

struct EvalResult {
    Complex value;
    Real truncation_bound = 0;
    std::size_t terms_used = 0;
};

// Raised when the geometric tail majorant cannot drop below tol within the
// term budget (|z| too close to 1 for the requested tolerance).
class TailBoundError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised by disk_minimum when every grid node had to be skipped.
class DegenerateGridError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// HYPGEO_MAX_TERMS, default 100000.
std::size_t max_terms_from_env();

/// Truncated power-series evaluator with a certified tail bound.
///
/// Holds the coefficients of one CoefficientSequence in quad precision. For
/// parameter-backed sequences the coefficients are extended past the exact
/// prefix with the exact coefficient ratio; explicit sequences are treated
/// as polynomials (zero tail).
///
/// The tail after entry K is majorized by the geometric series
///   m_K * rho r^s / (1 - rho r^s),
/// where m_K is the magnitude of the K-th term, s the exponent step (1, or 2
/// for odd-embedded series) and rho = max(1, largest of the next 16 term
/// ratios).
class SeriesEvaluator {
public:
    explicit SeriesEvaluator(CoefficientSequence seq, std::size_t max_terms = max_terms_from_env());

    const CoefficientSequence& sequence() const { return seq_; }

    EvalResult value(const Complex& z, const Real& tol);
    EvalResult derivative(const Complex& z, const Real& tol);

    struct ValueAndDerivative {
        EvalResult f;
        EvalResult df;
    };
    ValueAndDerivative both(const Complex& z, const Real& tol);

    // Smallest number of entries certifying the requested tails at radius r.
    // Extends the coefficient cache as needed; not thread-safe.
    std::size_t terms_for(const Real& r, const Real& tol, bool need_value, bool need_derivative);

    // Tail majorant after `terms` entries at radius r. Requires the cache to
    // cover terms + window entries.
    Real tail_bound(std::size_t terms, const Real& r, bool derivative) const;

    // Evaluate with a fixed number of entries; read-only, thread-safe once the
    // cache covers `terms` (+ window).
    ValueAndDerivative evaluate_fixed(const Complex& z, std::size_t terms) const;

    bool is_polynomial() const { return !seq_.params().has_value(); }

    static constexpr std::size_t ratio_window = 16;

private:
    void ensure(std::size_t count);
    std::size_t step() const { return seq_.kind() == SequenceKind::odd_embedded ? 2 : 1; }

    CoefficientSequence seq_;
    std::size_t max_terms_;
    std::vector<Real> coeffs_; // coeffs_[k] is entry k+1
};

EvalResult eval_series(const CoefficientSequence& seq, const ComplexPoint& z, const Real& tol);
EvalResult eval_derivative(const CoefficientSequence& seq, const ComplexPoint& z, const Real& tol);

enum class Functional {
    ctc_log,   // Re((1 - z) f'(z)), close-to-convexity w.r.t. -log(1-z)
    ctc_atanh, // Re((1 - z^2) f'(z)), w.r.t. (1/2) log((1+z)/(1-z))
    starlike,  // Re(z f'(z) / f(z))
};

std::string_view to_string(Functional f);
Functional parse_functional(std::string_view text);

struct GridSpec {
    std::size_t n_r = 64;
    std::size_t n_theta = 256;
    Rational r_max = Rational(19, 20);
};

struct DiskEvidence {
    Functional functional;
    GridSpec grid;
    Real min_value = 0;
    ComplexPoint argmin;
    // grid indices of the argmin (radius i in 1..n_r, angle j in 0..n_theta-1)
    std::size_t argmin_r_index = 0;
    std::size_t argmin_theta_index = 0;
    Real error_budget = 0;
    bool positive = false;
    std::size_t evaluated_nodes = 0;
    std::size_t skipped_nodes = 0;
};

struct EvidenceOptions {
    unsigned workers = 0; // 0: hardware concurrency
    std::size_t max_terms = max_terms_from_env();
};

/// Sampled minimum of a real-part functional over the polar grid
/// r_i = r_max i / n_r (i = 1..n_r), theta_j = 2 pi j / n_theta.
DiskEvidence disk_minimum(const CoefficientSequence& seq, Functional functional,
                          const GridSpec& grid, const Real& tol,
                          const EvidenceOptions& options = {});

/// Several functionals over one grid pass, sharing the series evaluations.
std::vector<DiskEvidence> disk_minima(const CoefficientSequence& seq,
                                      std::span<const Functional> functionals,
                                      const GridSpec& grid, const Real& tol,
                                      const EvidenceOptions& options = {});

/// (ctc_log, starlike) evidence for the normalized series or its Alexander
/// transform; KS* is empirically supported when both are positive.
std::pair<DiskEvidence, DiskEvidence> ks_star_evidence(const ParameterSet& params,
                                                       SequenceKind kind, const GridSpec& grid,
                                                       const Real& tol,
                                                       const EvidenceOptions& options = {});

} // namespace hypgeo
