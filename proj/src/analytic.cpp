#include <hypgeo/analytic.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <limits>
#include <string>
#include <thread>

#include <boost/math/constants/constants.hpp>

namespace hypgeo {

namespace {

constexpr long working_bits = 120;

Real mpz_to_real(const Integer& z)
{
    // |z| < 2^122 here; split at 64 bits so each half converts exactly.
    Integer mag = abs(z);
    Integer hi, lo;
    mpz_fdiv_q_2exp(hi.get_mpz_t(), mag.get_mpz_t(), 64);
    mpz_fdiv_r_2exp(lo.get_mpz_t(), mag.get_mpz_t(), 64);
    Real out = ldexp(Real(static_cast<unsigned long long>(mpz_get_ui(hi.get_mpz_t()))), 64)
               + Real(static_cast<unsigned long long>(mpz_get_ui(lo.get_mpz_t())));
    return z < 0 ? Real(-out) : out;
}

} // namespace

Real to_real(const Rational& q)
{
    if (q == 0) {
        return 0;
    }
    const long num_bits = static_cast<long>(mpz_sizeinbase(q.get_num_mpz_t(), 2));
    const long den_bits = static_cast<long>(mpz_sizeinbase(q.get_den_mpz_t(), 2));
    const long shift = working_bits - (num_bits - den_bits);
    Integer scaled;
    if (shift >= 0) {
        Integer num = q.get_num();
        mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
        mpz_tdiv_q(scaled.get_mpz_t(), num.get_mpz_t(), q.get_den_mpz_t());
    } else {
        Integer den = q.get_den();
        mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(-shift));
        mpz_tdiv_q(scaled.get_mpz_t(), q.get_num_mpz_t(), den.get_mpz_t());
    }
    return ldexp(mpz_to_real(scaled), static_cast<int>(-shift));
}

ComplexPoint ComplexPoint::polar(const Real& r, const Real& theta)
{
    return {r * cos(theta), r * sin(theta)};
}

Real ComplexPoint::modulus() const
{
    return hypot(re, im);
}

std::size_t max_terms_from_env()
{
    constexpr std::size_t fallback = 100000;
    const char* raw = std::getenv("HYPGEO_MAX_TERMS");
    if (raw == nullptr || *raw == '\0') {
        return fallback;
    }
    char* end = nullptr;
    const unsigned long long v = std::strtoull(raw, &end, 10);
    if (end == raw || *end != '\0' || v == 0) {
        return fallback;
    }
    return static_cast<std::size_t>(v);
}

// ---------------------------------------------------------------------------

SeriesEvaluator::SeriesEvaluator(CoefficientSequence seq, std::size_t max_terms)
    : seq_(std::move(seq)), max_terms_(max_terms)
{
    coeffs_.reserve(seq_.size());
    for (const auto& v : seq_.values()) {
        coeffs_.push_back(to_real(v));
    }
}

void SeriesEvaluator::ensure(std::size_t count)
{
    if (is_polynomial()) {
        return;
    }
    while (coeffs_.size() < count) {
        const std::size_t k = coeffs_.size();
        coeffs_.push_back(coeffs_.back() * to_real(seq_.ratio(k)));
    }
}

Real SeriesEvaluator::tail_bound(std::size_t terms, const Real& r, bool derivative) const
{
    auto magnitude = [&](std::size_t k) {
        const auto p = static_cast<long>(seq_.exponent(k));
        if (derivative) {
            return Real(p) * abs(coeffs_[k - 1]) * pow(r, Real(p - 1));
        }
        return abs(coeffs_[k - 1]) * pow(r, Real(p));
    };

    if (is_polynomial()) {
        Real rest = 0;
        for (std::size_t k = terms + 1; k <= coeffs_.size(); ++k) {
            rest += magnitude(k);
        }
        return rest;
    }

    const Real m = magnitude(terms);
    if (m == 0) {
        return 0;
    }
    Real rho = 1;
    for (std::size_t j = terms; j < terms + ratio_window; ++j) {
        Real ratio = abs(coeffs_[j] / coeffs_[j - 1]);
        if (derivative) {
            ratio *= Real(static_cast<long>(seq_.exponent(j + 1)))
                     / Real(static_cast<long>(seq_.exponent(j)));
        }
        rho = std::max(rho, ratio);
    }
    const Real q = rho * pow(r, Real(static_cast<long>(step())));
    if (q >= 1) {
        return std::numeric_limits<Real>::infinity();
    }
    return m * q / (1 - q);
}

std::size_t SeriesEvaluator::terms_for(const Real& r, const Real& tol, bool need_value,
                                       bool need_derivative)
{
    if (is_polynomial()) {
        return coeffs_.size();
    }
    for (std::size_t k = 1; k <= max_terms_; ++k) {
        ensure(k + ratio_window + 1);
        if ((!need_value || tail_bound(k, r, false) < tol)
            && (!need_derivative || tail_bound(k, r, true) < tol)) {
            return k;
        }
    }
    throw TailBoundError("tail bound above tolerance after " + std::to_string(max_terms_)
                         + " terms; |z| too close to 1 for the requested tolerance");
}

SeriesEvaluator::ValueAndDerivative SeriesEvaluator::evaluate_fixed(const Complex& z,
                                                                    std::size_t terms) const
{
    const Complex w = step() == 2 ? Complex(z * z) : z;
    Complex g(0), h(0);
    for (std::size_t k = terms; k >= 1; --k) {
        const Real& c = coeffs_[k - 1];
        g = g * w + c;
        h = h * w + Real(static_cast<long>(seq_.exponent(k))) * c;
    }
    ValueAndDerivative out;
    out.f.value = z * g;
    out.f.terms_used = terms;
    out.df.value = h;
    out.df.terms_used = terms;
    return out;
}

namespace {

Real radius_of(const Complex& z)
{
    const Real r = abs(z);
    if (!(r < 1)) {
        throw std::invalid_argument("evaluation point must lie inside the unit disk");
    }
    return r;
}

} // namespace

EvalResult SeriesEvaluator::value(const Complex& z, const Real& tol)
{
    const Real r = radius_of(z);
    const std::size_t k = terms_for(r, tol, true, false);
    auto out = evaluate_fixed(z, k).f;
    out.truncation_bound = tail_bound(k, r, false);
    return out;
}

EvalResult SeriesEvaluator::derivative(const Complex& z, const Real& tol)
{
    const Real r = radius_of(z);
    const std::size_t k = terms_for(r, tol, false, true);
    auto out = evaluate_fixed(z, k).df;
    out.truncation_bound = tail_bound(k, r, true);
    return out;
}

SeriesEvaluator::ValueAndDerivative SeriesEvaluator::both(const Complex& z, const Real& tol)
{
    const Real r = radius_of(z);
    const std::size_t k = terms_for(r, tol, true, true);
    auto out = evaluate_fixed(z, k);
    out.f.truncation_bound = tail_bound(k, r, false);
    out.df.truncation_bound = tail_bound(k, r, true);
    return out;
}

EvalResult eval_series(const CoefficientSequence& seq, const ComplexPoint& z, const Real& tol)
{
    SeriesEvaluator ev(seq);
    return ev.value(z.value(), tol);
}

EvalResult eval_derivative(const CoefficientSequence& seq, const ComplexPoint& z, const Real& tol)
{
    SeriesEvaluator ev(seq);
    return ev.derivative(z.value(), tol);
}

// ---------------------------------------------------------------------------

std::string_view to_string(Functional f)
{
    switch (f) {
    case Functional::ctc_log:
        return "ctc_log";
    case Functional::ctc_atanh:
        return "ctc_atanh";
    case Functional::starlike:
        return "starlike";
    }
    return "?";
}

Functional parse_functional(std::string_view text)
{
    if (text == "ctc_log") {
        return Functional::ctc_log;
    }
    if (text == "ctc_atanh") {
        return Functional::ctc_atanh;
    }
    if (text == "starlike") {
        return Functional::starlike;
    }
    throw std::invalid_argument("unknown functional '" + std::string(text) + "'");
}

namespace {

struct NodeValue {
    Real value;
    Real error;
    bool skipped = false;
};

NodeValue apply(Functional fn, const Complex& z, const SeriesEvaluator::ValueAndDerivative& ev,
                const Real& tol)
{
    const Real& df_err = ev.df.truncation_bound;
    switch (fn) {
    case Functional::ctc_log: {
        const Complex factor = Complex(1) - z;
        return {real(factor * ev.df.value), abs(factor) * df_err};
    }
    case Functional::ctc_atanh: {
        const Complex factor = Complex(1) - z * z;
        return {real(factor * ev.df.value), abs(factor) * df_err};
    }
    case Functional::starlike: {
        const Real r = abs(z);
        if (r < Real(1e-8)) {
            return {1, 0};
        }
        const Real f_abs = abs(ev.f.value);
        if (f_abs < 10 * tol) {
            return {0, 0, true};
        }
        const Complex q = z * ev.df.value / ev.f.value;
        const Real& f_err = ev.f.truncation_bound;
        Real err = std::numeric_limits<Real>::infinity();
        if (f_abs > f_err) {
            err = (r * df_err + abs(q) * f_err) / (f_abs - f_err);
        }
        return {real(q), err};
    }
    }
    return {0, 0, true};
}

struct RowSummary {
    bool any = false;
    Real min_value;
    std::size_t argmin_j = 0;
    Complex argmin_z;
    Real max_error = 0;
    std::size_t evaluated = 0;
    std::size_t skipped = 0;
};

void validate(const GridSpec& grid)
{
    if (grid.n_r < 1 || grid.n_theta < 1) {
        throw std::invalid_argument("grid needs at least one radius and one angle");
    }
    if (!(grid.r_max > 0 && grid.r_max <= Rational(99, 100))) {
        throw std::invalid_argument("grid r_max must lie in (0, 0.99]");
    }
}

} // namespace

std::vector<DiskEvidence> disk_minima(const CoefficientSequence& seq,
                                      std::span<const Functional> functionals,
                                      const GridSpec& grid, const Real& tol,
                                      const EvidenceOptions& options)
{
    validate(grid);
    if (functionals.empty()) {
        return {};
    }
    const bool need_value =
        std::find(functionals.begin(), functionals.end(), Functional::starlike)
        != functionals.end();

    SeriesEvaluator evaluator(seq, options.max_terms);

    // Term counts and tail bounds per radius, computed up front so the
    // parallel phase only reads the coefficient cache.
    struct RadiusPlan {
        Real r;
        std::size_t terms;
        Real f_bound;
        Real df_bound;
    };
    std::vector<RadiusPlan> plan;
    plan.reserve(grid.n_r);
    for (std::size_t i = 1; i <= grid.n_r; ++i) {
        const Rational r_exact =
            grid.r_max * Rational(static_cast<unsigned long>(i), static_cast<unsigned long>(grid.n_r));
        const Real r = to_real(r_exact);
        const std::size_t k = evaluator.terms_for(r, tol, need_value, true);
        plan.push_back({r, k, evaluator.tail_bound(k, r, false), evaluator.tail_bound(k, r, true)});
    }

    const std::size_t nf = functionals.size();
    std::vector<RowSummary> rows(grid.n_r * nf);
    const Real two_pi = 2 * boost::math::constants::pi<Real>();

    auto run_row = [&](std::size_t row) {
        const auto& rp = plan[row];
        for (std::size_t j = 0; j < grid.n_theta; ++j) {
            const Real theta = two_pi * Real(static_cast<unsigned long long>(j))
                               / Real(static_cast<unsigned long long>(grid.n_theta));
            const Complex z = ComplexPoint::polar(rp.r, theta).value();
            auto ev = evaluator.evaluate_fixed(z, rp.terms);
            ev.f.truncation_bound = rp.f_bound;
            ev.df.truncation_bound = rp.df_bound;
            for (std::size_t f = 0; f < nf; ++f) {
                auto& summary = rows[row * nf + f];
                const NodeValue node = apply(functionals[f], z, ev, tol);
                if (node.skipped) {
                    ++summary.skipped;
                    continue;
                }
                ++summary.evaluated;
                summary.max_error = std::max(summary.max_error, node.error);
                if (!summary.any || node.value < summary.min_value) {
                    summary.any = true;
                    summary.min_value = node.value;
                    summary.argmin_j = j;
                    summary.argmin_z = z;
                }
            }
        }
    };

    unsigned workers = options.workers != 0 ? options.workers : std::thread::hardware_concurrency();
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(grid.n_r)));
    if (workers == 1) {
        for (std::size_t row = 0; row < grid.n_r; ++row) {
            run_row(row);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t row = next++; row < grid.n_r; row = next++) {
                    run_row(row);
                }
            });
        }
    }

    // Row-ordered reduction: strict < keeps the lexicographically first (r, theta).
    std::vector<DiskEvidence> out;
    out.reserve(nf);
    for (std::size_t f = 0; f < nf; ++f) {
        DiskEvidence ev;
        ev.functional = functionals[f];
        ev.grid = grid;
        bool any = false;
        for (std::size_t row = 0; row < grid.n_r; ++row) {
            const auto& s = rows[row * nf + f];
            ev.evaluated_nodes += s.evaluated;
            ev.skipped_nodes += s.skipped;
            ev.error_budget = std::max(ev.error_budget, s.max_error);
            if (s.any && (!any || s.min_value < ev.min_value)) {
                any = true;
                ev.min_value = s.min_value;
                ev.argmin = {real(s.argmin_z), imag(s.argmin_z)};
                ev.argmin_r_index = row + 1;
                ev.argmin_theta_index = s.argmin_j;
            }
        }
        if (!any) {
            throw DegenerateGridError("every grid node was skipped for functional "
                                      + std::string(to_string(functionals[f])));
        }
        ev.positive = ev.min_value - ev.error_budget > 0;
        out.push_back(std::move(ev));
    }
    return out;
}

DiskEvidence disk_minimum(const CoefficientSequence& seq, Functional functional,
                          const GridSpec& grid, const Real& tol, const EvidenceOptions& options)
{
    const Functional one[] = {functional};
    return std::move(disk_minima(seq, one, grid, tol, options).front());
}

std::pair<DiskEvidence, DiskEvidence> ks_star_evidence(const ParameterSet& params,
                                                       SequenceKind kind, const GridSpec& grid,
                                                       const Real& tol,
                                                       const EvidenceOptions& options)
{
    if (kind == SequenceKind::odd_embedded) {
        throw std::invalid_argument("KS* evidence is defined for normalized or alexander series");
    }
    const Functional both[] = {Functional::ctc_log, Functional::starlike};
    auto ev = disk_minima(build_sequence(params, 2, kind), both, grid, tol, options);
    return {std::move(ev[0]), std::move(ev[1])};
}

} // namespace hypgeo
