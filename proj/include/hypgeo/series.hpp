#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include <hypgeo/rational.hpp>

namespace hypgeo {

/// The five parameters of z 3F2(a,b,c;d,e;z).
///
/// Construction through `make` enforces the series-layer invariants:
/// a, b, c > 0 and d, e not a pole (0, -1, -2, ...). The theorem predicates
/// additionally require d, e > 0, see `require_positive_denominators`.
class ParameterSet {
public:
    static ParameterSet make(Rational a, Rational b, Rational c, Rational d, Rational e);

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    const Rational& c() const { return c_; }
    const Rational& d() const { return d_; }
    const Rational& e() const { return e_; }

    // Throws std::invalid_argument unless d > 0 and e > 0.
    void require_positive_denominators() const;

    // a+b+c, ab+bc+ca, abc
    Rational sum() const { return a_ + b_ + c_; }
    Rational pair_sum() const { return a_ * b_ + b_ * c_ + a_ * c_; }
    Rational product() const { return a_ * b_ * c_; }

    bool operator==(const ParameterSet&) const = default;

private:
    ParameterSet(Rational a, Rational b, Rational c, Rational d, Rational e)
        : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)), e_(std::move(e))
    {
    }

    Rational a_, b_, c_, d_, e_;
};

// Series-layer validity check without throwing.
bool is_valid(const Rational& a, const Rational& b, const Rational& c, const Rational& d,
              const Rational& e);

/// Rising factorial (x)_n = x(x+1)...(x+n-1); (x)_0 = 1.
Rational pochhammer(const Rational& x, unsigned n);

/// Coefficient A_n of z^n in z 3F2(a,b,c;d,e;z); A_1 = 1.
Rational coefficient(const ParameterSet& p, std::size_t n);

/// A_{n+1}/A_n = (a+n-1)(b+n-1)(c+n-1) / ((d+n-1)(e+n-1) n).
Rational coefficient_ratio(const ParameterSet& p, std::size_t n);

enum class SequenceKind {
    normalized,   // A_n of z 3F2(...; z), coefficient of z^n
    odd_embedded, // coefficient of z^{2n-1} in z 3F2(...; z^2)
    alexander,    // A_n / n, the Alexander transform of the normalized series
};

std::string_view to_string(SequenceKind kind);
SequenceKind parse_sequence_kind(std::string_view text);

/// Exact prefix of a normalized series. `values[k]` holds the (k+1)-th
/// coefficient: for odd_embedded that is the coefficient of z^{2k+1}.
///
/// Sequences built from parameters carry them (and can be extended past the
/// prefix); sequences built from explicit values describe a polynomial.
class CoefficientSequence {
public:
    static CoefficientSequence from_values(std::vector<Rational> values,
                                           SequenceKind kind = SequenceKind::normalized);

    const std::optional<ParameterSet>& params() const { return params_; }
    SequenceKind kind() const { return kind_; }
    std::size_t size() const { return values_.size(); }
    std::span<const Rational> values() const { return values_; }

    // 1-based access: A(1) is the leading coefficient.
    const Rational& A(std::size_t n) const { return values_.at(n - 1); }

    // Power of z carried by the n-th (1-based) entry.
    std::size_t exponent(std::size_t n) const
    {
        return kind_ == SequenceKind::odd_embedded ? 2 * n - 1 : n;
    }

    // Exact ratio of entry n+1 to entry n for parameter-backed sequences.
    Rational ratio(std::size_t n) const;

private:
    friend CoefficientSequence build_sequence(const ParameterSet&, std::size_t, SequenceKind);

    CoefficientSequence(std::optional<ParameterSet> params, SequenceKind kind,
                        std::vector<Rational> values)
        : params_(std::move(params)), kind_(kind), values_(std::move(values))
    {
    }

    std::optional<ParameterSet> params_;
    SequenceKind kind_;
    std::vector<Rational> values_;
};

/// First N entries of the requested series, by the ratio recurrence.
CoefficientSequence build_sequence(const ParameterSet& p, std::size_t N,
                                   SequenceKind kind = SequenceKind::normalized);

/// Entrywise product of two coefficient lists (convolution of the series).
std::vector<Rational> hadamard(std::span<const Rational> lhs, std::span<const Rational> rhs);

/// B_n = n A_n - (n+1) A_{n+1}, for 1 <= n < N.
struct DifferenceSequence {
    std::vector<Rational> values;

    const Rational& B(std::size_t n) const { return values.at(n - 1); }
    std::size_t size() const { return values.size(); }
};

DifferenceSequence difference_sequence(const CoefficientSequence& seq);

} // namespace hypgeo
