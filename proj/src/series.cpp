#include <hypgeo/series.hpp>

#include <stdexcept>
#include <string>

namespace hypgeo {

bool is_valid(const Rational& a, const Rational& b, const Rational& c, const Rational& d,
              const Rational& e)
{
    return a > 0 && b > 0 && c > 0 && !is_nonpositive_integer(d) && !is_nonpositive_integer(e);
}

ParameterSet ParameterSet::make(Rational a, Rational b, Rational c, Rational d, Rational e)
{
    for (Rational* x : {&a, &b, &c, &d, &e}) {
        x->canonicalize();
    }
    if (!(a > 0 && b > 0 && c > 0)) {
        throw std::invalid_argument("parameters a, b, c must be positive");
    }
    if (is_nonpositive_integer(d) || is_nonpositive_integer(e)) {
        throw std::invalid_argument("parameters d, e must not be zero or a negative integer");
    }
    return ParameterSet(std::move(a), std::move(b), std::move(c), std::move(d), std::move(e));
}

void ParameterSet::require_positive_denominators() const
{
    if (!(d_ > 0 && e_ > 0)) {
        throw std::invalid_argument("theorem predicates require d > 0 and e > 0");
    }
}

Rational pochhammer(const Rational& x, unsigned n)
{
    Rational result = 1;
    for (unsigned k = 0; k < n; ++k) {
        result *= x + k;
    }
    return result;
}

Rational coefficient_ratio(const ParameterSet& p, std::size_t n)
{
    if (n == 0) {
        throw std::invalid_argument("coefficient index starts at 1");
    }
    const Rational m = static_cast<unsigned long>(n - 1);
    Rational num = (p.a() + m) * (p.b() + m) * (p.c() + m);
    Rational den = (p.d() + m) * (p.e() + m) * (m + 1);
    return num / den;
}

Rational coefficient(const ParameterSet& p, std::size_t n)
{
    if (n == 0) {
        throw std::invalid_argument("coefficient index starts at 1");
    }
    Rational value = 1;
    for (std::size_t k = 1; k < n; ++k) {
        value *= coefficient_ratio(p, k);
    }
    return value;
}

std::string_view to_string(SequenceKind kind)
{
    switch (kind) {
    case SequenceKind::normalized:
        return "normalized";
    case SequenceKind::odd_embedded:
        return "odd";
    case SequenceKind::alexander:
        return "alexander";
    }
    return "?";
}

SequenceKind parse_sequence_kind(std::string_view text)
{
    if (text == "normalized") {
        return SequenceKind::normalized;
    }
    if (text == "odd" || text == "odd-embedded" || text == "odd_embedded") {
        return SequenceKind::odd_embedded;
    }
    if (text == "alexander") {
        return SequenceKind::alexander;
    }
    throw std::invalid_argument("unknown sequence kind '" + std::string(text) + "'");
}

CoefficientSequence CoefficientSequence::from_values(std::vector<Rational> values,
                                                     SequenceKind kind)
{
    if (values.empty()) {
        throw std::invalid_argument("coefficient sequence must not be empty");
    }
    for (auto& v : values) {
        v.canonicalize();
    }
    return CoefficientSequence(std::nullopt, kind, std::move(values));
}

Rational CoefficientSequence::ratio(std::size_t n) const
{
    if (!params_) {
        throw std::logic_error("ratio requires a parameter-backed sequence");
    }
    Rational r = coefficient_ratio(*params_, n);
    if (kind_ == SequenceKind::alexander) {
        r *= Rational(static_cast<unsigned long>(n), static_cast<unsigned long>(n + 1));
    }
    return r;
}

CoefficientSequence build_sequence(const ParameterSet& p, std::size_t N, SequenceKind kind)
{
    if (N < 2) {
        throw std::invalid_argument("sequence length must be at least 2");
    }
    CoefficientSequence seq(p, kind, {});
    seq.values_.reserve(N);
    seq.values_.emplace_back(1);
    for (std::size_t n = 1; n < N; ++n) {
        seq.values_.push_back(seq.values_.back() * seq.ratio(n));
    }
    return seq;
}

std::vector<Rational> hadamard(std::span<const Rational> lhs, std::span<const Rational> rhs)
{
    if (lhs.size() != rhs.size()) {
        throw std::length_error("hadamard product needs equal-length coefficient lists");
    }
    std::vector<Rational> out;
    out.reserve(lhs.size());
    for (std::size_t i = 0; i < lhs.size(); ++i) {
        out.push_back(lhs[i] * rhs[i]);
    }
    return out;
}

DifferenceSequence difference_sequence(const CoefficientSequence& seq)
{
    if (seq.size() < 2) {
        throw std::invalid_argument("difference sequence needs at least two coefficients");
    }
    DifferenceSequence diff;
    diff.values.reserve(seq.size() - 1);
    for (std::size_t n = 1; n < seq.size(); ++n) {
        diff.values.push_back(Rational(static_cast<unsigned long>(n)) * seq.A(n)
                              - Rational(static_cast<unsigned long>(n + 1)) * seq.A(n + 1));
    }
    return diff;
}

} // namespace hypgeo
