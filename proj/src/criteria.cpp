#include <hypgeo/criteria.hpp>

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

namespace hypgeo {

std::string_view to_string(Theorem t)
{
    switch (t) {
    case Theorem::T1:
        return "T1";
    case Theorem::T2:
        return "T2";
    case Theorem::T3:
        return "T3";
    case Theorem::T4:
        return "T4";
    }
    return "?";
}

Theorem parse_theorem(std::string_view text)
{
    if (text == "1" || text == "T1" || text == "t1") {
        return Theorem::T1;
    }
    if (text == "2" || text == "T2" || text == "t2") {
        return Theorem::T2;
    }
    if (text == "3" || text == "T3" || text == "t3") {
        return Theorem::T3;
    }
    if (text == "4" || text == "T4" || text == "t4") {
        return Theorem::T4;
    }
    throw std::invalid_argument("unknown theorem '" + std::string(text) + "'");
}

std::string_view to_string(Relation r)
{
    return r == Relation::ge ? ">=" : "<=";
}

std::string_view to_string(Lemma l)
{
    switch (l) {
    case Lemma::fejer:
        return "fejer";
    case Lemma::ozaki:
        return "ozaki";
    case Lemma::ozaki_odd:
        return "ozaki_odd";
    }
    return "?";
}

std::string_view to_string(ChainBranch b)
{
    return b == ChainBranch::non_increasing ? "non-increasing" : "non-decreasing-bounded-2";
}

PredicatePart make_part(std::string key, std::string name, Rational lhs, Rational rhs,
                        Relation relation)
{
    PredicatePart part{std::move(key), std::move(name), std::move(lhs), std::move(rhs), relation,
                       false};
    part.satisfied = relation == Relation::ge ? part.lhs >= part.rhs : part.lhs <= part.rhs;
    return part;
}

const PredicatePart* PredicateVerdict::first_failure() const
{
    auto it = std::find_if(parts.begin(), parts.end(),
                           [](const PredicatePart& p) { return !p.satisfied; });
    return it == parts.end() ? nullptr : &*it;
}

namespace {

PredicateVerdict finish(Theorem t, const ParameterSet& p, std::vector<PredicatePart> parts)
{
    PredicateVerdict v{t, p, true, std::move(parts), {}};
    v.overall = std::all_of(v.parts.begin(), v.parts.end(),
                            [](const PredicatePart& part) { return part.satisfied; });
    return v;
}

Rational shifted(const Rational& x, std::size_t k)
{
    return x + static_cast<unsigned long>(k);
}

Rational integer(std::size_t n)
{
    return Rational(static_cast<unsigned long>(n));
}

} // namespace

PredicateVerdict thm1_predicate(const ParameterSet& p)
{
    p.require_positive_denominators();
    const Rational s = p.sum();
    const Rational q = p.pair_sum();
    const Rational abc = p.product();
    const Rational de = p.d() * p.e();
    const Rational de_sum = p.d() + p.e();

    std::vector<PredicatePart> parts;
    parts.push_back(make_part("de_ge_2abc", "de >= 2abc", de, 2 * abc));
    parts.push_back(make_part("sum_ge_abc", "d+e >= a+b+c", de_sum, s));
    parts.push_back(make_part("sum_ge_half", "d+e >= (ab+bc+ca+2(a+b+c)-1-2abc)/2", de_sum,
                              Rational(q + 2 * s - 1 - 2 * abc) / 2));
    parts.push_back(make_part("sum_ge_quad", "d+e >= 2(ab+bc+ca)-3abc", de_sum, 2 * q - 3 * abc));
    return finish(Theorem::T1, p, std::move(parts));
}

PredicateVerdict thm2_predicate(const ParameterSet& p)
{
    p.require_positive_denominators();
    const Rational s = p.sum();
    const Rational q = p.pair_sum();
    const Rational abc = p.product();
    const Rational de = p.d() * p.e();
    const Rational de_sum = p.d() + p.e();
    const Rational alpha = Rational(2 * q + 3 * s - 6 * abc - 1) / 3;

    std::vector<PredicatePart> parts;
    parts.push_back(make_part("de_ge_3abc", "de >= 3abc", de, 3 * abc));
    parts.push_back(make_part("sum_ge_abc", "d+e >= a+b+c", de_sum, s));
    parts.push_back(make_part("sum_ge_alpha", "d+e >= alpha(a,b,c)", de_sum, alpha));
    parts.push_back(make_part("sum_ge_quad", "d+e >= 3(ab+bc+ca)-7abc", de_sum, 3 * q - 7 * abc));
    return finish(Theorem::T2, p, std::move(parts));
}

// Condition polynomials term by term; a, b, c, d, e all appear even though
// they are named T_i(a,b,c).
std::vector<Rational> thm3_polynomials(const ParameterSet& p)
{
    const Rational &a = p.a(), &b = p.b(), &c = p.c(), &d = p.d(), &e = p.e();
    const Rational s = a + b + c;
    const Rational q = a * b + b * c + a * c;
    const Rational abc = a * b * c;
    const Rational gap = e + d - s;
    const Rational a2 = a * a, b2 = b * b, c2 = c * c, d2 = d * d, e2 = e * e;

    Rational t1 = gap * (gap + 1);
    Rational t2 = (gap + 1) * (2 * d * e + 5 * (e + d) - 2 * q - 5 * s + 2);

    // shared d/e-linear coefficient of T3
    const Rational k3 = ((-2 * a - 10) * b - 10 * a - 16) * c + (-10 * a - 16) * b - 16 * a + 15;
    Rational t3 = (d2 + 9 * d + 9) * e2
                  + (9 * d2 + ((-2 * b - 2 * a - 8) * c + (-2 * a - 8) * b - 8 * a + 29) * d + k3) * e
                  + 9 * d2 + k3 * d + (b2 + (4 * a + 9) * b + a2 + 9 * a + 7) * c2
                  + ((4 * a + 9) * b2 + (4 * a2 + 24 * a + 3) * b + 9 * a2 + 3 * a - 11) * c
                  + (a2 + 9 * a + 7) * b2 + (9 * a2 + 3 * a - 11) * b + 7 * a2 - 11 * a + 4;

    const Rational k4 = ((-10 * a - 16) * b - 16 * a - 8) * c + (-16 * a - 8) * b - 8 * a + 11;
    Rational t4 =
        (4 * d2 + 14 * d + 7) * e2
        + (14 * d2 + (((-2 * a - 8) * b - 8 * a - 8) * c + (-8 * a - 8) * b - 8 * a + 32) * d + k4)
              * e
        + 7 * d2 + k4 * d
        + ((2 * a + 4) * b2 + (2 * a2 + 16 * a + 10) * b + 4 * a2 + 10 * a + 3) * c2
        + ((2 * a2 + 16 * a + 10) * b2 + (16 * a2 + 16 * a - 8) * b + 10 * a2 - 8 * a - 5) * c
        + (4 * a2 + 10 * a + 3) * b2 + (10 * a2 - 8 * a - 5) * b + 3 * a2 - 5 * a + 2;

    Rational t = (2 * d2 + 2 * d) * e2 + (2 * d2 + (2 - 8 * abc) * d - 8 * abc) * e - 8 * abc * d
                 + ((3 * a2 + 3 * a) * b2 + (3 * a2 + 3 * a) * b) * c2
                 + ((3 * a2 + 3 * a) * b2 + (3 * a2 - 5 * a) * b) * c;

    return {t1, t2, t3, t4, t};
}

std::vector<Rational> thm4_polynomials(const ParameterSet& p)
{
    const Rational &a = p.a(), &b = p.b(), &c = p.c(), &d = p.d(), &e = p.e();
    const Rational gap = e + d - c - b - a;
    const Rational abc = a * b * c;
    const Rational a2 = a * a, b2 = b * b, c2 = c * c, d2 = d * d, e2 = e * e;

    Rational t1 = (gap + 1) * (gap + 2);
    Rational t2 = 2 * (gap + 2) * (d * e + 2 * e + 2 * d - b * c - a * c - c - a * b - b - a + 1);

    const Rational k = ((-2 * a - 6) * b - 6 * a - 4) * c + (-6 * a - 4) * b - 4 * a + 9;
    Rational t3 = (d2 + 7 * d + 5) * e2
                  + (7 * d2 + ((-2 * b - 2 * a - 4) * c + (-2 * a - 4) * b - 4 * a + 21) * d + k) * e
                  + 5 * d2 + k * d + (b2 + (4 * a + 3) * b + a2 + 3 * a + 1) * c2
                  + ((4 * a + 3) * b2 + (4 * a2 + 4 * a - 5) * b + 3 * a2 - 5 * a - 3) * c
                  + (a2 + 3 * a + 1) * b2 + (3 * a2 - 5 * a - 3) * b + a2 - 3 * a + 2;

    Rational t = (2 * d2 + 2 * d) * e2 + (2 * d2 + (2 - 4 * abc) * d - 4 * abc) * e - 4 * abc * d
                 + ((a2 + a) * b2 + (a2 + a) * b) * c2 + ((a2 + a) * b2 + (a2 - 3 * a) * b) * c;

    return {t1, t2, t3, t};
}

PredicateVerdict thm3_predicate(const ParameterSet& p)
{
    p.require_positive_denominators();
    const auto polys = thm3_polynomials(p);
    const Rational de_sum = p.d() + p.e();

    std::vector<PredicatePart> parts;
    for (int i = 0; i < 4; ++i) {
        const std::string t = "T" + std::to_string(i + 1);
        parts.push_back(make_part("sum_ge_" + t, "d+e >= " + t, de_sum, polys[i]));
    }
    parts.push_back(make_part("T_ge_0", "T >= 0", polys[4], 0));
    auto v = finish(Theorem::T3, p, std::move(parts));
    v.variant_flags["with_thm1"] = v.overall && thm1_predicate(p).overall;
    return v;
}

PredicateVerdict thm4_predicate(const ParameterSet& p)
{
    p.require_positive_denominators();
    const auto polys = thm4_polynomials(p);
    const Rational de_sum = p.d() + p.e();

    std::vector<PredicatePart> parts;
    for (int i = 0; i < 3; ++i) {
        const std::string t = "T" + std::to_string(i + 1);
        parts.push_back(make_part("sum_ge_" + t, "d+e >= " + t, de_sum, polys[i]));
    }
    parts.push_back(make_part("T_ge_0", "T >= 0", polys[3], 0));
    auto v = finish(Theorem::T4, p, std::move(parts));
    const Rational abc = p.product();
    v.variant_flags["proof_conditions"] =
        p.d() * p.e() >= abc && de_sum >= p.pair_sum() - abc;
    return v;
}

PredicateVerdict theorem_predicate(Theorem t, const ParameterSet& p)
{
    switch (t) {
    case Theorem::T1:
        return thm1_predicate(p);
    case Theorem::T2:
        return thm2_predicate(p);
    case Theorem::T3:
        return thm3_predicate(p);
    case Theorem::T4:
        return thm4_predicate(p);
    }
    throw std::invalid_argument("unknown theorem");
}

// ---------------------------------------------------------------------------
// Lemma hypotheses

namespace {

struct ChainResult {
    bool holds = true;
    std::size_t first_failure = 0;
};

// terms[0] is the leading 1; the chains run over all of terms.
ChainResult non_increasing_to_zero(const std::vector<Rational>& terms)
{
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (terms[i] < 0 || (i + 1 < terms.size() && terms[i] < terms[i + 1])) {
            return {false, i + 1};
        }
    }
    return {};
}

ChainResult non_decreasing_bounded_2(const std::vector<Rational>& terms)
{
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (terms[i] > 2 || (i + 1 < terms.size() && terms[i] > terms[i + 1])) {
            return {false, i + 1};
        }
    }
    return {};
}

LemmaVerdict two_chains(Lemma lemma, const std::vector<Rational>& terms)
{
    LemmaVerdict v{lemma, false, std::nullopt, std::nullopt, terms.size()};
    const auto down = non_increasing_to_zero(terms);
    if (down.holds) {
        v.holds = true;
        v.branch = ChainBranch::non_increasing;
        return v;
    }
    const auto up = non_decreasing_bounded_2(terms);
    if (up.holds) {
        v.holds = true;
        v.branch = ChainBranch::non_decreasing_bounded_2;
        return v;
    }
    v.first_violation_index = std::max(down.first_failure, up.first_failure);
    return v;
}

void require_leading_one(const CoefficientSequence& seq)
{
    if (seq.A(1) != 1) {
        throw std::invalid_argument("Ozaki chains need A_1 = 1");
    }
}

} // namespace

LemmaVerdict check_fejer(const CoefficientSequence& seq)
{
    const std::size_t N = seq.size();
    if (N < 3) {
        throw std::invalid_argument("Fejer check needs at least three coefficients");
    }
    std::vector<Rational> weighted(N);
    for (std::size_t n = 1; n <= N; ++n) {
        weighted[n - 1] = integer(n) * seq.A(n);
    }
    LemmaVerdict v{Lemma::fejer, true, std::nullopt, std::nullopt, N};
    for (std::size_t n = 1; n <= N; ++n) {
        bool ok = seq.A(n) >= 0;
        if (ok && n < N) {
            ok = weighted[n - 1] >= weighted[n];
        }
        if (ok && n + 1 < N) {
            const Rational b_n = weighted[n - 1] - weighted[n];
            const Rational b_next = weighted[n] - weighted[n + 1];
            ok = b_n >= b_next;
        }
        if (!ok) {
            v.holds = false;
            v.first_violation_index = n;
            return v;
        }
    }
    return v;
}

LemmaVerdict check_ozaki(const CoefficientSequence& seq)
{
    if (seq.size() < 2) {
        throw std::invalid_argument("Ozaki check needs at least two coefficients");
    }
    require_leading_one(seq);
    std::vector<Rational> terms;
    terms.reserve(seq.size());
    for (std::size_t n = 1; n <= seq.size(); ++n) {
        terms.push_back(integer(n) * seq.A(n));
    }
    return two_chains(Lemma::ozaki, terms);
}

LemmaVerdict check_ozaki_odd(const CoefficientSequence& seq)
{
    if (seq.kind() != SequenceKind::odd_embedded) {
        throw std::invalid_argument("odd Ozaki check needs an odd-embedded sequence");
    }
    require_leading_one(seq);
    std::vector<Rational> terms;
    terms.reserve(seq.size());
    for (std::size_t k = 1; k <= seq.size(); ++k) {
        terms.push_back(integer(seq.exponent(k)) * seq.A(k));
    }
    return two_chains(Lemma::ozaki_odd, terms);
}

// ---------------------------------------------------------------------------
// Proof polynomials

namespace {

Rational rising3(const ParameterSet& p, std::size_t k)
{
    return shifted(p.a(), k) * shifted(p.b(), k) * shifted(p.c(), k);
}

} // namespace

Rational alexander_u(const ParameterSet& p, std::size_t n)
{
    return integer(n) * shifted(p.d(), n - 1) * shifted(p.e(), n - 1) - rising3(p, n - 1);
}

Rational proof_poly(Theorem t, const ParameterSet& p, std::size_t n)
{
    if (n == 0) {
        throw std::invalid_argument("proof polynomials are indexed from n = 1");
    }
    const Rational N = integer(n);
    const Rational &d = p.d(), &e = p.e();
    switch (t) {
    case Theorem::T1:
        return N * N * shifted(e, n - 1) * shifted(d, n - 1) - (N + 1) * rising3(p, n - 1);
    case Theorem::T2:
        return (2 * N - 1) * N * shifted(d, n - 1) * shifted(e, n - 1)
               - (2 * N + 1) * rising3(p, n - 1);
    case Theorem::T3:
        return N * N * (N + 1) * shifted(d, n) * shifted(d, n - 1) * shifted(e, n)
                   * shifted(e, n - 1)
               - 2 * (N + 1) * (N + 1) * shifted(d, n) * shifted(e, n) * rising3(p, n - 1)
               + (N + 2) * rising3(p, n) * rising3(p, n - 1);
    case Theorem::T4:
        return alexander_u(p, n) * shifted(d, n) * shifted(e, n) * (N + 1)
               - alexander_u(p, n + 1) * rising3(p, n - 1);
    }
    throw std::invalid_argument("unknown theorem");
}

Rational proof_denominator(Theorem t, const ParameterSet& p, std::size_t n)
{
    const Rational N = integer(n);
    const Rational &d = p.d(), &e = p.e();
    switch (t) {
    case Theorem::T1:
    case Theorem::T2:
        return shifted(d, n - 1) * shifted(e, n - 1) * N;
    case Theorem::T3:
        return N * (N + 1) * shifted(d, n) * shifted(d, n - 1) * shifted(e, n) * shifted(e, n - 1);
    case Theorem::T4:
        // (e+n-1), not (c+n-1): only the e factor makes the identity hold
        return shifted(d, n - 1) * shifted(e, n - 1) * shifted(d, n) * shifted(e, n) * (N + 1);
    }
    throw std::invalid_argument("unknown theorem");
}

bool ProofAuditReport::all_nonneg() const
{
    return std::all_of(nonnegativity.begin(), nonnegativity.end(),
                       [](const PolyValue& v) { return v.nonneg; });
}

ProofAuditReport proof_identity_audit(Theorem t, const ParameterSet& p, std::size_t N)
{
    if (N < 2) {
        throw std::invalid_argument("audit range must reach at least n = 2");
    }
    SequenceKind kind = SequenceKind::normalized;
    if (t == Theorem::T2) {
        kind = SequenceKind::odd_embedded;
    } else if (t == Theorem::T4) {
        kind = SequenceKind::alexander;
    }
    // T3/T4 differences reach A_{n+2}
    const auto seq = build_sequence(p, N + 2, kind);

    ProofAuditReport report{t, p, 1, N, true, {}, {}};
    report.nonnegativity.reserve(N);
    for (std::size_t n = 1; n <= N; ++n) {
        Rational difference;
        switch (t) {
        case Theorem::T1:
        case Theorem::T4: {
            const Rational b_n = integer(n) * seq.A(n) - integer(n + 1) * seq.A(n + 1);
            if (t == Theorem::T1) {
                difference = b_n;
            } else {
                const Rational b_next =
                    integer(n + 1) * seq.A(n + 1) - integer(n + 2) * seq.A(n + 2);
                difference = b_n - b_next;
            }
            break;
        }
        case Theorem::T2:
            difference = integer(seq.exponent(n)) * seq.A(n)
                         - integer(seq.exponent(n + 1)) * seq.A(n + 1);
            break;
        case Theorem::T3:
            difference = integer(n) * seq.A(n) - 2 * integer(n + 1) * seq.A(n + 1)
                         + integer(n + 2) * seq.A(n + 2);
            break;
        }
        Rational poly = proof_poly(t, p, n);
        const Rational predicted = seq.A(n) * poly / proof_denominator(t, p, n);
        if (predicted != difference) {
            report.identity_ok = false;
            report.mismatches.push_back(n);
        }
        const bool nonneg = poly >= 0;
        report.nonnegativity.push_back({n, std::move(poly), nonneg});
    }
    return report;
}

} // namespace hypgeo
