#include <doctest.h>

#include <algorithm>
#include <array>
#include <random>
#include <stdexcept>
#include <vector>

#include <hypgeo/criteria.hpp>

#include "oracles.hpp"

using namespace hypgeo;

namespace {

ParameterSet P(Rational a, Rational b, Rational c, Rational d, Rational e)
{
    return ParameterSet::make(a, b, c, d, e);
}

CoefficientSequence values(std::vector<Rational> v, SequenceKind kind = SequenceKind::normalized)
{
    return CoefficientSequence::from_values(std::move(v), kind);
}

std::vector<Rational> generate(std::size_t N, auto f)
{
    std::vector<Rational> out;
    for (std::size_t n = 1; n <= N; ++n) {
        out.push_back(Rational(f(n)));
    }
    return out;
}

Rational ul(std::size_t n)
{
    return Rational(static_cast<unsigned long>(n));
}

const PredicatePart& part(const PredicateVerdict& v, std::string_view key)
{
    auto it = std::find_if(v.parts.begin(), v.parts.end(), [&](const auto& p) { return p.key == key; });
    REQUIRE(it != v.parts.end());
    return *it;
}

ParameterSet random_params(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> den(1, 12);
    auto draw = [&](int hi) {
        const int q = den(rng);
        return Rational(std::uniform_int_distribution<int>(1, hi * q)(rng), q);
    };
    return P(draw(3), draw(3), draw(3), draw(10), draw(10));
}

} // namespace

TEST_CASE("check_fejer examples")
{
    const auto inv_sq = build_sequence(P(1, 1, 1, 2, 2), 60);
    CHECK(check_fejer(inv_sq).holds);

    const auto ones = check_fejer(values(generate(10, [](std::size_t) -> Rational { return Rational(1); })));
    CHECK_FALSE(ones.holds);
    CHECK(ones.first_violation_index == 1u);

    const auto harmonic = values(generate(10, [](std::size_t n) -> Rational { return Rational(1) / ul(n); }));
    CHECK(check_fejer(harmonic).holds);

    CHECK_THROWS_AS(check_fejer(values({1, 1})), std::invalid_argument);
}

TEST_CASE("check_ozaki examples")
{
    const auto down = check_ozaki(build_sequence(P(1, 1, 1, 2, 2), 50));
    CHECK(down.holds);
    CHECK(down.branch == ChainBranch::non_increasing);

    // nA_n = 2 - 1/n
    const auto up = check_ozaki(values(generate(50, [](std::size_t n) -> Rational {
        return Rational(2 * ul(n) - 1) / (ul(n) * ul(n));
    })));
    CHECK(up.holds);
    CHECK(up.branch == ChainBranch::non_decreasing_bounded_2);

    const auto ones = check_ozaki(values(generate(10, [](std::size_t) -> Rational { return Rational(1); })));
    CHECK_FALSE(ones.holds);
    CHECK(ones.first_violation_index == 3u);
    CHECK(ones.checked_length == 10u);

    CHECK_THROWS_AS(check_ozaki(values({2, 1})), std::invalid_argument);
}

TEST_CASE("check_ozaki_odd examples")
{
    const auto atanh = values(generate(30, [](std::size_t n) -> Rational { return Rational(1) / ul(2 * n - 1); }),
                              SequenceKind::odd_embedded);
    CHECK(check_ozaki_odd(atanh).holds);

    auto z_only = std::vector<Rational>(20, Rational(0));
    z_only[0] = 1;
    const auto z = check_ozaki_odd(values(z_only, SequenceKind::odd_embedded));
    CHECK(z.holds);
    CHECK(z.branch == ChainBranch::non_increasing);

    const auto geometric = check_ozaki_odd(values(std::vector<Rational>(20, Rational(1)), SequenceKind::odd_embedded));
    CHECK_FALSE(geometric.holds);

    CHECK_THROWS_AS(check_ozaki_odd(atanh.params() ? atanh : values({1, 0, 0})), std::invalid_argument);
}

TEST_CASE("thm1_predicate examples")
{
    const auto v = thm1_predicate(P(1, 1, 1, 2, 2));
    CHECK(v.overall);
    CHECK(part(v, "de_ge_2abc").lhs == 4);
    CHECK(part(v, "de_ge_2abc").rhs == 2);
    CHECK(part(v, "sum_ge_abc").rhs == 3);
    CHECK(part(v, "sum_ge_half").rhs == 3);
    CHECK(part(v, "sum_ge_quad").rhs == 3);

    const auto w = thm1_predicate(P(1, 1, 1, 1, 1));
    CHECK_FALSE(w.overall);
    CHECK_FALSE(part(w, "de_ge_2abc").satisfied);

    const Rational h(1, 2);
    const auto x = thm1_predicate(P(h, h, h, 1, 1));
    CHECK(x.overall);
    CHECK(part(x, "de_ge_2abc").rhs == Rational(1, 4));
    CHECK(part(x, "sum_ge_abc").rhs == Rational(3, 2));
    CHECK(part(x, "sum_ge_half").rhs == Rational(5, 4));
    CHECK(part(x, "sum_ge_quad").rhs == Rational(9, 8));

    CHECK_THROWS_AS(thm1_predicate(P(1, 1, 1, Rational(-1, 2), 2)), std::invalid_argument);
}

TEST_CASE("thm2_predicate examples")
{
    const auto v = thm2_predicate(P(1, 1, 1, 2, 2));
    CHECK(v.overall);
    CHECK(part(v, "sum_ge_alpha").rhs == Rational(8, 3));
    CHECK(part(v, "sum_ge_quad").rhs == 2);
    CHECK_FALSE(thm2_predicate(P(1, 1, 1, 1, 2)).overall);
    CHECK(thm2_predicate(P(1, 1, 1, 3, 1)).overall);
}

TEST_CASE("thm3_predicate examples")
{
    const auto v = thm3_predicate(P(1, 1, 1, 2, 2));
    CHECK_FALSE(v.overall);
    REQUIRE(v.first_failure() != nullptr);
    CHECK(v.first_failure()->name == "d+e >= T2");
    CHECK(v.first_failure()->lhs == 4);
    CHECK(v.first_failure()->rhs == 18);

    const Rational h(3, 2);
    const auto w = thm3_predicate(P(1, 1, 1, h, h));
    CHECK_FALSE(w.overall);
    CHECK(w.first_failure()->key == "sum_ge_T3");
    CHECK(w.first_failure()->rhs == Rational(49, 16));

    const Rational s(7, 5);
    const auto x = thm3_predicate(P(1, 1, 1, s, s));
    CHECK(x.overall);
    CHECK(x.variant_flags.at("with_thm1") == false);
    // frozen from exact evaluation of the condition polynomials
    const auto polys = thm3_polynomials(P(1, 1, 1, s, s));
    CHECK(polys[0] == Rational(-4, 25));
    CHECK(polys[1] == Rational(-108, 125));
    CHECK(polys[2] == Rational(-904, 625));
    CHECK(polys[3] == Rational(-276, 625));
    CHECK(polys[4] == Rational(312, 625));
}

TEST_CASE("thm4_predicate examples")
{
    const auto v = thm4_predicate(P(1, 1, 1, 2, 2));
    CHECK_FALSE(v.overall);
    CHECK(part(v, "sum_ge_T1").rhs == 6);
    CHECK(v.variant_flags.at("proof_conditions"));

    CHECK(part(thm4_predicate(P(1, 1, 1, 3, 3)), "sum_ge_T1").rhs == 20);
    const Rational h(1, 2);
    const auto w = thm4_predicate(P(h, h, h, 2, 2));
    CHECK_FALSE(w.overall);
    CHECK(part(w, "sum_ge_T1").rhs == Rational(63, 4));
}

TEST_CASE("proof_poly examples")
{
    const auto p = P(1, 1, 1, 2, 2);
    CHECK(proof_poly(Theorem::T1, p, 1) == 2);
    CHECK(alexander_u(p, 1) == 3);
    CHECK(proof_poly(Theorem::T2, p, 1) == p.d() * p.e() - 3 * p.product());

    // brute-force substitution into the three-product form of P(n)
    const auto q = P(Rational(5, 2), Rational(4, 3), 1, Rational(5, 2), Rational(4, 3));
    for (std::size_t n = 1; n <= 6; ++n) {
        const Rational N = Rational(static_cast<unsigned long>(n));
        const Rational &a = q.a(), &b = q.b(), &c = q.c(), &d = q.d(), &e = q.e();
        const Rational expect = N * N * (N + 1) * (d + N) * (d + N - 1) * (e + N) * (e + N - 1)
                                - 2 * (N + 1) * (N + 1) * (d + N) * (e + N) * (a + N - 1) * (b + N - 1) * (c + N - 1)
                                + (N + 2) * (a + N) * (a + N - 1) * (b + N) * (b + N - 1) * (c + N) * (c + N - 1);
        CHECK(proof_poly(Theorem::T3, q, n) == expect);
    }
    CHECK_THROWS_AS(proof_poly(Theorem::T1, p, 0), std::invalid_argument);
}

TEST_CASE("proof_identity_audit examples")
{
    const auto p = P(1, 1, 1, 2, 2);
    const auto r1 = proof_identity_audit(Theorem::T1, p, 50);
    CHECK(r1.identity_ok);
    CHECK(r1.all_nonneg());
    CHECK(r1.nonnegativity.size() == 50);

    // f = z/(1-z): nA_n - (n+1)A_{n+1} = -1, U(n) carries the sign
    const auto g = P(Rational(3, 2), Rational(7, 4), 1, Rational(3, 2), Rational(7, 4));
    const auto r2 = proof_identity_audit(Theorem::T1, g, 30);
    CHECK(r2.identity_ok);
    CHECK_FALSE(r2.all_nonneg());

    const auto r4 = proof_identity_audit(Theorem::T4, p, 50);
    CHECK(r4.identity_ok);
}

TEST_CASE("Theorem 4 denominator with (c+n-1) does not reproduce the difference")
{
    // c chosen so that (c+n-1) != (e+n-1)
    const auto p = P(Rational(1, 2), Rational(3, 2), Rational(5, 4), 3, Rational(7, 3));
    const auto seq = build_sequence(p, 5, SequenceKind::alexander);
    const std::size_t n = 1;
    const Rational b1 = seq.A(1) - 2 * seq.A(2);
    const Rational b2 = 2 * seq.A(2) - 3 * seq.A(3);
    const Rational with_c = seq.A(1) * proof_poly(Theorem::T4, p, n)
                             / (p.d() * p.c() * (p.d() + 1) * (p.e() + 1) * 2);
    CHECK(with_c != b1 - b2);
    CHECK(seq.A(1) * proof_poly(Theorem::T4, p, n) / proof_denominator(Theorem::T4, p, n) == b1 - b2);
}

TEST_CASE("property: audits hold for random parameters, all theorems")
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 25; ++trial) {
        const auto p = random_params(rng);
        for (const auto t : {Theorem::T1, Theorem::T2, Theorem::T3, Theorem::T4}) {
            CHECK(proof_identity_audit(t, p, 40).identity_ok);
        }
    }
}

TEST_CASE("property: verdict conjunction law and symmetry of T1/T2")
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const auto p = random_params(rng);
        for (const auto t : {Theorem::T1, Theorem::T2, Theorem::T3, Theorem::T4}) {
            const auto v = theorem_predicate(t, p);
            const bool all = std::all_of(v.parts.begin(), v.parts.end(), [](const auto& x) { return x.satisfied; });
            CHECK(v.overall == all);
            for (const auto& x : v.parts) {
                CHECK(x.satisfied == (x.relation == Relation::ge ? x.lhs >= x.rhs : x.lhs <= x.rhs));
            }
        }
        std::array<Rational, 3> abc{p.a(), p.b(), p.c()};
        std::sort(abc.begin(), abc.end());
        const bool t1 = thm1_predicate(p).overall;
        const bool t2 = thm2_predicate(p).overall;
        do {
            for (const bool swap : {false, true}) {
                const auto q = P(abc[0], abc[1], abc[2], swap ? p.e() : p.d(), swap ? p.d() : p.e());
                CHECK(thm1_predicate(q).overall == t1);
                CHECK(thm2_predicate(q).overall == t2);
            }
        } while (std::next_permutation(abc.begin(), abc.end()));
    }
}

TEST_CASE("property: Theorem 1 and 2 sufficiency on random tuples")
{
    std::mt19937_64 rng(123);
    int hits1 = 0;
    int hits2 = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const auto p = random_params(rng);
        if (thm1_predicate(p).overall) {
            ++hits1;
            const auto v = check_ozaki(build_sequence(p, 80));
            CHECK(v.holds);
            CHECK(v.branch == ChainBranch::non_increasing);
            for (std::size_t n = 1; n <= 80; n += 7) {
                CHECK(proof_poly(Theorem::T1, p, n) >= 0);
            }
        }
        if (thm2_predicate(p).overall) {
            ++hits2;
            CHECK(check_ozaki_odd(build_sequence(p, 80, SequenceKind::odd_embedded)).holds);
        }
    }
    CHECK(hits1 > 50);
    CHECK(hits2 > 50);
}

TEST_CASE("Theorem 3 with Theorem 1's conditions: known satisfying tuple passes the lemmas")
{
    const auto p = P(1, 3, 1, 3, 2);
    const auto v = thm3_predicate(p);
    CHECK(v.overall);
    CHECK(v.variant_flags.at("with_thm1"));
    const auto seq = build_sequence(p, 200);
    CHECK(check_fejer(seq).holds);
    CHECK(check_ozaki(seq).holds);
}

TEST_CASE("Theorem 4 conditions admit a counterexample")
{
    // a+b+c > d+e+1 makes nA_n of the Alexander transform grow, yet every
    // stated condition and the proof conditions hold.
    const auto p = P(Rational(11, 4), Rational(3, 5), Rational(1, 2), 2, Rational(1, 2));
    const auto v = thm4_predicate(p);
    CHECK(v.overall);
    CHECK(v.variant_flags.at("proof_conditions"));
    const auto seq = build_sequence(p, 200, SequenceKind::alexander);
    const auto fejer = check_fejer(seq);
    CHECK_FALSE(fejer.holds);
    CHECK(fejer.first_violation_index == 3u);
    CHECK_FALSE(check_ozaki(seq).holds);
}
