#include "efk/dunkl/verify.hpp"
#include "efk/errors.hpp"

#include <gtest/gtest.h>

#include <numeric>

using namespace efk;
using namespace efk::dunkl;
using freealg::RelationSet;

namespace {

VerifyOptions with_oracle()
{
    VerifyOptions o;
    o.oracle_bank_size = 8;
    return o;
}

RelationSet elliptic(int n)
{
    return RelationSet::family(n, PsiKind::elliptic, ParamSet::generic(n));
}

RelationSet multiparam(int n)
{
    std::vector<Complex> Lambda;
    for (int i = 0; i < n; ++i)
        Lambda.emplace_back(0.5 * i * i + 0.3, 0.2 * i);
    return RelationSet::multiparam(n, 1.0, Lambda);
}

long falling(long a, long r)
{
    long p = 1;
    for (long t = 0; t < r; ++t)
        p *= (a - t);
    return p;
}

long binom(long a, long r)
{
    if (r < 0 || r > a)
        return 0;
    long p = 1;
    for (long t = 1; t <= r; ++t)
        p = p * (a - r + t) / t;
    return p;
}

// Closed form of the recursion for commuting values: a sum over partial
// matchings M of I of prod_{(a,b) in M} c_ab times e_{k - 2|M|} of the
// unmatched values.
Complex ek_by_matchings(const std::vector<int>& I, int k, const std::function<Complex(int, int)>& c,
                        const std::function<Complex(int)>& X)
{
    Complex total{0.0, 0.0};
    for (int l = 0; 2 * l <= k; ++l)
        for (const auto& I0 : subsets_of_size(I, 2 * l)) {
            const Complex pc = phi_value(I0, c);
            const std::vector<int> rest = set_minus(I, I0);
            Complex e{0.0, 0.0};
            for (const auto& S : subsets_of_size(rest, k - 2 * l)) {
                Complex prod{1.0, 0.0};
                for (int i : S)
                    prod *= X(i);
                e += prod;
            }
            total += pc * e;
        }
    return total;
}

} // namespace

TEST(Theta, SmallCases)
{
    EXPECT_EQ(theta<ExactScalar>(1, 2), ExactElem::bracket(2, 1, 2));
    EXPECT_EQ(theta<ExactScalar>(2, 2), -ExactElem::bracket(2, 1, 2));
    EXPECT_EQ(theta<ExactScalar>(1, 3), ExactElem::bracket(3, 1, 2) + ExactElem::bracket(3, 1, 3));
    for (int n = 2; n <= 6; ++n) {
        ExactElem sum(n);
        for (int i = 1; i <= n; ++i) {
            const ExactElem t = theta<ExactScalar>(i, n);
            EXPECT_EQ(t.size(), static_cast<std::size_t>(n - 1));
            for (const auto& [w, c] : t.terms()) {
                EXPECT_EQ(w.size(), 1u);
                EXPECT_TRUE(c == ExactScalar(1L) || c == ExactScalar(-1L));
            }
            sum += t;
        }
        EXPECT_TRUE(sum.is_zero());
    }
    EXPECT_THROW(theta<ExactScalar>(0, 3), ParamError);
}

TEST(Combinatorics, MatchingCounts)
{
    EXPECT_EQ(perfect_matchings({}).size(), 1u);
    EXPECT_EQ(perfect_matchings({2, 5}).size(), 1u);
    EXPECT_EQ(perfect_matchings({1, 2, 3, 4}).size(), 3u);
    EXPECT_EQ(perfect_matchings({1, 2, 3, 4, 5, 6}).size(), 15u);
    EXPECT_THROW(perfect_matchings({1, 2, 3}), ParamError);
    const auto w = [](int a, int b) { return Complex(a * 10 + b, 0.5 * a - b); };
    const Complex expected = w(1, 2) * w(3, 4) + w(1, 3) * w(2, 4) + w(1, 4) * w(2, 3);
    EXPECT_LT(std::abs(phi_value({4, 3, 2, 1}, w) - expected), 1e-12);
    EXPECT_EQ(phi_value({}, w), Complex(1.0, 0.0));
}

TEST(Combinatorics, SubsetsAreLexicographic)
{
    const auto s = subsets_of_size({1, 2, 3, 4}, 2);
    ASSERT_EQ(s.size(), 6u);
    EXPECT_EQ(s.front(), (std::vector<int>{1, 2}));
    EXPECT_EQ(s.back(), (std::vector<int>{3, 4}));
    EXPECT_EQ(all_subsets(4).size(), 16u);
    EXPECT_EQ(complement(5, {2, 4}), (std::vector<int>{1, 3, 5}));
}

TEST(PieriWords, CountsAndSingleBracket)
{
    // Words are distinct, so the count is falling(|A|, r) * multichoose(|B|, r).
    for (int a = 1; a <= 3; ++a)
        for (int b = 1; b <= 3; ++b)
            for (int r = 0; r <= a; ++r) {
                std::vector<int> A, B;
                for (int t = 1; t <= a; ++t)
                    A.push_back(t);
                for (int t = 1; t <= b; ++t)
                    B.push_back(a + t);
                const ExactElem w = pieri_words<ExactScalar>(a + b, A, B, r);
                EXPECT_EQ(static_cast<long>(w.size()), falling(a, r) * binom(b + r - 1, r)) << a << b << r;
            }
    ExactElem single(4);
    for (int a : {1, 2})
        for (int b : {3, 4})
            single += ExactElem::bracket(4, a, b);
    EXPECT_EQ(pieri_words<ExactScalar>(4, {1, 2}, {3, 4}, 1), single);
}

TEST(EkTable, BaseCasesAndE3)
{
    const int n = 4;
    const std::function<ExactScalar(int, int)> p = [](int i, int j) { return ExactScalar::p(i, j); };
    EXPECT_EQ(ek_deformed<ExactScalar>(n, {1, 2, 3}, 0, p), ExactElem::one(n));
    EXPECT_TRUE(ek_deformed<ExactScalar>(n, {}, 2, p).is_zero());
    ExactElem e1(n);
    for (int i : {1, 3, 4})
        e1 += theta<ExactScalar>(i, n);
    EXPECT_EQ(ek_deformed<ExactScalar>(n, {1, 3, 4}, 1, p), e1);
    const auto t = [n](int i) { return theta<ExactScalar>(i, n); };
    const ExactElem e3 = t(1) * t(2) * t(3) + ExactScalar::p(2, 3) * t(1) + ExactScalar::p(1, 3) * t(2) +
                         ExactScalar::p(1, 2) * t(3);
    EXPECT_EQ(ek_deformed<ExactScalar>(n, {1, 2, 3}, 3, p), e3);
}

TEST(EkTable, ScalarRecursionMatchesMatchingSum)
{
    UniformStream rng(17);
    std::vector<Complex> X(7);
    for (auto& v : X)
        v = {rng.symmetric(1.0), rng.symmetric(1.0)};
    const auto c = [](int i, int j) { return Complex(1.0 / (i + j), 0.1 * i * j); };
    const auto Xf = [&X](int i) { return X[i]; };
    for (const auto& I : all_subsets(6))
        for (int k = 0; k <= static_cast<int>(I.size()); ++k) {
            const Complex a = ek_scalar(I, k, c, Xf);
            const Complex b = ek_by_matchings(I, k, c, Xf);
            EXPECT_LT(std::abs(a - b), 1e-11 * std::max(1.0, std::abs(b)));
        }
}

TEST(EkTable, InsertionOrderIndependence)
{
    const VerifyOptions o;
    const std::vector<int> I{1, 2, 3, 4};
    for (std::uint64_t seed : {3u, 9u}) {
        EXPECT_TRUE(insertion_order_check(5, I, 3, multiparam(5), seed, o).pass());
        EXPECT_TRUE(insertion_order_check(4, I, 2, elliptic(4), seed, o).pass());
    }
}

TEST(Commutator, EllipticWithOracle)
{
    const RelationSet rs = elliptic(3);
    for (int i = 1; i <= 3; ++i)
        for (int j = i + 1; j <= 3; ++j) {
            const Check c = commutator_check(i, j, rs, with_oracle());
            EXPECT_TRUE(c.member);
            ASSERT_TRUE(c.oracle.has_value());
            EXPECT_TRUE(c.oracle->pass) << c.oracle->max_residual;
            EXPECT_LT(c.max_residual, 1e-8);
        }
}

TEST(Commutator, ExactMultiparamAndTrivial)
{
    const RelationSet rs = multiparam(5);
    for (int i = 1; i <= 5; ++i)
        for (int j = i + 1; j <= 5; ++j)
            EXPECT_TRUE(commutator_check(i, j, rs, {}).pass()) << i << j;
    const Check same = commutator_check(2, 2, rs, {});
    EXPECT_TRUE(same.pass());
}

TEST(Commutator, ThetaWithoutOneTermFails)
{
    // theta_1 missing [14] does not commute with theta_2.
    const int n = 4;
    const RelationSet rs = multiparam(n);
    const ExactElem t1 = ExactElem::bracket(n, 1, 2) + ExactElem::bracket(n, 1, 3);
    const ExactElem t2 = theta<ExactScalar>(2, n);
    EXPECT_FALSE(check_exact("control", {}, t1 * t2 - t2 * t1, rs, {}).pass());
}

TEST(CyclicSum, ThreeTermCase)
{
    const int n = 3;
    const ExactElem q = q_k<ExactScalar>(n, {1, 2, 3});
    const auto b = [n](int i, int j) { return ExactElem::bracket(n, i, j); };
    EXPECT_EQ(q, b(1, 2) * b(1, 3) + b(2, 3) * b(2, 1) + b(3, 1) * b(3, 2));
    EXPECT_TRUE(q_k_check({1, 2, 3}, multiparam(3), {}).pass());
}

TEST(CyclicSum, EllipticAndExact)
{
    EXPECT_TRUE(q_k_check({1, 2, 3, 4}, elliptic(4), with_oracle()).pass());
    EXPECT_TRUE(q_k_check({2, 4, 1, 3}, multiparam(5), {}).pass());
    EXPECT_TRUE(q_k_check({1, 2, 3, 4, 5}, multiparam(5), {}).pass());
}

TEST(CyclicSum, DroppedTermFails)
{
    const int n = 4;
    const std::vector<int> idx{1, 2, 3, 4};
    const ExactElem partial = q_k<ExactScalar>(n, idx) - cyclic_fan<ExactScalar>(n, idx, 2);
    EXPECT_FALSE(check_exact("control", {}, partial, multiparam(n), {}).pass());
    EXPECT_THROW(q_k_check({1, 2}, multiparam(3), {}), ParamError);
}

TEST(StarSum, KTwoExplicit)
{
    const int n = 3, m = 3;
    const auto b = [n](int i, int j) { return ExactElem::bracket(n, i, j); };
    const ExactElem lhs = p_k_lhs<ExactScalar>(n, {1, 2}, m);
    EXPECT_EQ(lhs, -(b(1, m) * b(2, m) * b(1, m) + b(2, m) * b(1, m) * b(2, m)));
    const std::function<ExactScalar(int, int)> p = [](int i, int j) { return ExactScalar::p(i, j); };
    EXPECT_EQ(p_k_rhs<ExactScalar>(n, {1, 2}, m, p), ExactScalar::p(1, m) * b(1, 2) + ExactScalar::p(2, m) * b(2, 1));
    EXPECT_TRUE(p_k_check({1, 2}, m, multiparam(n), {}).pass());
    EXPECT_TRUE(p_k_check({1, 2}, m, elliptic(n), with_oracle()).pass());
}

TEST(StarSum, HigherK)
{
    EXPECT_TRUE(p_k_check({1, 2, 3}, 4, multiparam(4), {}).pass());
    EXPECT_TRUE(p_k_check({3, 1, 2}, 4, elliptic(4), with_oracle()).pass());
    EXPECT_TRUE(p_k_check({1, 2, 3, 4}, 5, multiparam(5), {}).pass());
}

TEST(StarSum, EqualConstantsCancel)
{
    // lambda_13 = -lambda_23 makes c_13 = c_23 for the rational family, so
    // the right side vanishes and the left side alone lies in the ideal.
    ParamSet ps = ParamSet::generic(3);
    ps.lambda = {Complex(0.7, 0.1), Complex(-0.7, -0.1), Complex(0.0, 0.0)};
    const RelationSet rs = RelationSet::family(3, PsiKind::rational, ps);
    ASSERT_LT(std::abs(rs.c(1, 3) - rs.c(2, 3)), 1e-14);
    const Check c = check_numeric("star_sum_equal", {}, p_k_lhs<NumericScalar>(3, {1, 2}, 3), rs, {});
    EXPECT_TRUE(c.pass());
}

TEST(StarSum, WrongSignFails)
{
    const int n = 4;
    const std::function<ExactScalar(int, int)> p = [](int i, int j) { return ExactScalar::p(i, j); };
    const ExactElem wrong = p_k_lhs<ExactScalar>(n, {1, 2, 3}, 4) + p_k_rhs<ExactScalar>(n, {1, 2, 3}, 4, p);
    EXPECT_FALSE(check_exact("control", {}, wrong, multiparam(n), {}).pass());
}

TEST(StarSum, PrintedKFourExpansion)
{
    const PrintedExampleReport r = p4_printed_check({});
    EXPECT_TRUE(r.first_line_equals_lhs);
    EXPECT_TRUE(r.second_line.pass());
    EXPECT_TRUE(r.final_line_matches);
    EXPECT_TRUE(r.identity.pass());
}

TEST(Pieri, SingleBracketAgreesUnderBothReadings)
{
    const RelationSet rs = elliptic(4);
    const PieriOutcome o = verify_pieri(4, 1, {1, 3}, rs, with_oracle());
    ASSERT_EQ(o.checks.size(), 1u);
    EXPECT_EQ(o.winners, (std::vector<std::string>{"any"}));
    EXPECT_EQ(ek_theta(4, {1, 3}, 1, rs).size(), pieri_rhs(4, 1, {1, 3}, rs, PhiConvention::x).size());
}

TEST(Pieri, XDifferencesWin)
{
    const RelationSet rs = elliptic(4);
    const PieriOutcome o = verify_pieri(4, 2, {1, 2}, rs, with_oracle());
    ASSERT_EQ(o.checks.size(), 2u);
    EXPECT_EQ(o.winners, (std::vector<std::string>{"x"}));
    const Check& x = o.checks[0];
    ASSERT_TRUE(x.oracle.has_value());
    EXPECT_TRUE(x.oracle->pass);
    const Check& lambda = o.checks[1];
    EXPECT_FALSE(lambda.member);
    ASSERT_TRUE(lambda.oracle.has_value());
    EXPECT_FALSE(lambda.oracle->pass);
}

TEST(Pieri, TrigAndRationalFamilies)
{
    for (PsiKind kind : {PsiKind::trig, PsiKind::rational}) {
        const RelationSet rs = RelationSet::family(4, kind, ParamSet::generic(4));
        const PieriOutcome o = verify_pieri(4, 3, {1, 2, 4}, rs, with_oracle());
        EXPECT_EQ(o.winners, (std::vector<std::string>{"x"})) << to_string(kind);
    }
}

TEST(Pieri, ExactLimitsAdjudicate)
{
    // In the multiparam limit the x reading of phi vanishes; the lambda
    // reading keeps products of p and must fail.
    const PieriOutcome o = verify_pieri(4, 2, {1, 2}, multiparam(4), {});
    EXPECT_EQ(o.winners, (std::vector<std::string>{"x"}));
    const PieriOutcome z = verify_pieri(4, 3, {1, 2, 3}, RelationSet::psi_zero(4), {});
    EXPECT_EQ(z.winners.size(), 2u);
}

TEST(Pieri, DroppedWordFails)
{
    const RelationSet rs = elliptic(4);
    const std::vector<int> I{1, 2};
    NumericElem rhs = pieri_rhs(4, 2, I, rs, PhiConvention::x);
    rhs -= NumericElem::bracket(4, 1, 3) * NumericElem::bracket(4, 2, 4);
    EXPECT_FALSE(check_numeric("control", {}, ek_theta(4, I, 2, rs) - rhs, rs, {}).pass());
}

TEST(FullSetPieri, OddAndEvenK)
{
    const RelationSet rs2 = elliptic(2);
    EXPECT_TRUE((theta<NumericScalar>(1, 2) + theta<NumericScalar>(2, 2)).is_zero());
    EXPECT_TRUE(corollary_check(2, 1, rs2, {}).pass());
    EXPECT_TRUE(corollary_check(3, 3, elliptic(3), with_oracle()).pass());
    const PieriOutcome even = corollary_check(4, 2, elliptic(4), with_oracle());
    EXPECT_EQ(even.winners, (std::vector<std::string>{"x"}));
}

TEST(E3Example, PhiReadingHoldsPrintedPsiDoesNot)
{
    const auto checks = e3_example_checks(elliptic(5), with_oracle());
    ASSERT_EQ(checks.size(), 2u);
    EXPECT_EQ(checks[0].convention, "psi");
    EXPECT_FALSE(checks[0].pass());
    EXPECT_EQ(checks[1].convention, "x");
    EXPECT_TRUE(checks[1].pass());
}

TEST(E3Example, PrintedPsiFailsEvenWithoutRationalPart)
{
    ParamSet ps = ParamSet::generic(5);
    ps.a = 0.0;
    const auto checks = e3_example_checks(RelationSet::family(5, PsiKind::elliptic, ps), {});
    EXPECT_FALSE(checks[0].member);
    EXPECT_TRUE(checks[1].member);
}

TEST(Equivariant, Cases)
{
    // Sum of theta'_i over the full set is the sum of x_i exactly.
    ExactElem s(4);
    ExactScalar xs(0L);
    for (int i = 1; i <= 4; ++i) {
        s += theta_prime(i, 4);
        xs += ExactScalar::x(i);
    }
    EXPECT_EQ(s, ExactElem::scalar(4, xs));
    EXPECT_TRUE(equivariant_pieri(3, 2, {1, 2}, {}).pass());
    EXPECT_TRUE(equivariant_pieri(4, 3, {1, 2, 4}, {}).pass());
    EXPECT_TRUE(equivariant_full(4, 2, {}).pass());
    EXPECT_TRUE(equivariant_full(3, 3, {}).pass());
}

TEST(Equivariant, WrongPowerOfXFails)
{
    const ExactElem wrong = equivariant_lhs(3, 2, {1, 2}) - equivariant_rhs(3, 2, {1, 2}) +
                            ExactElem::scalar(3, ExactScalar::x(1));
    EXPECT_FALSE(check_exact("control", {}, wrong, RelationSet::psi_zero(3), {}).pass());
}

TEST(Multiparam, Cases)
{
    EXPECT_TRUE(multiparam_pieri(4, 2, {1, 2}, multiparam(4), {}).pass());
    EXPECT_TRUE(multiparam_pieri(5, 3, {1, 2, 3}, multiparam(5), {}).pass());
    // With p = 0 the deformed polynomial is the plain one of the psi = 0 algebra.
    std::vector<ExactElem> ts;
    for (int i : {1, 2, 3})
        ts.push_back(theta<ExactScalar>(i, 4));
    const ExactElem plain = elementary<ExactScalar>(4, ts, 2);
    EXPECT_TRUE(check_exact("plain", {}, plain - multiparam_rhs(4, 2, {1, 2, 3}), RelationSet::psi_zero(4), {}).pass());
    EXPECT_THROW(multiparam_pieri(4, 2, {1, 2}, RelationSet::psi_zero(4), {}), ParamError);
}

TEST(Degeneration, CoherentAtSmallDelta)
{
    const std::vector<Complex> Lambda{{0.5, 0.7}, {0.2, -0.3}, {-0.4, 0.1}};
    const DegenerationReport r = degeneration_coherence(3, 2, {1, 2}, 1.0, Lambda, 1e-3, {});
    EXPECT_TRUE(r.elliptic.pass());
    EXPECT_TRUE(r.multiparam.pass());
    EXPECT_LT(r.max_relative_error, 1e-4);
    EXPECT_TRUE(r.pass());
}
