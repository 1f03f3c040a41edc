#include "efk/errors.hpp"
#include "efk/scalars/elliptic.hpp"
#include "efk/scalars/jacobi.hpp"
#include "efk/scalars/linear_action.hpp"
#include "efk/scalars/numeric_scalar.hpp"
#include "efk/scalars/params.hpp"
#include "efk/scalars/psi.hpp"
#include "efk/scalars/rational_function.hpp"
#include "efk/scalars/sample_plan.hpp"

#include <gtest/gtest.h>

using namespace efk;

namespace {

constexpr double tol = 1e-9;

// Classical product-free form theta1 = 2 sum (-1)^n q^{(n+1/2)^2} sin((2n+1) pi z).
Complex theta_oracle(Complex z, Complex tau)
{
    const Complex q = std::exp(I * pi * tau);
    Complex s{0.0, 0.0};
    for (int n = 0; n < 40; ++n) {
        const double h = n + 0.5;
        s += (n % 2 ? -2.0 : 2.0) * std::pow(q, h * h) * std::sin((2.0 * n + 1.0) * pi * z);
    }
    return s;
}

// q-expansion of the Weierstrass function for the lattice Z + Z tau.
Complex wp_oracle(Complex z, Complex tau)
{
    const Complex q = std::exp(I * pi * tau);
    const Complex s = std::sin(pi * z);
    Complex acc = -1.0 / 3.0 + 1.0 / (s * s);
    for (int n = 1; n < 80; ++n) {
        const Complex q2n = std::pow(q, 2.0 * n);
        acc += 8.0 * n * q2n / (1.0 - q2n) * (1.0 - std::cos(2.0 * pi * n * z));
    }
    return pi * pi * acc;
}

std::vector<Complex> seeded_points(std::uint64_t seed, int count, double box = 0.45)
{
    UniformStream rng(seed);
    std::vector<Complex> out;
    while (static_cast<int>(out.size()) < count) {
        Complex z{rng.symmetric(box), rng.symmetric(box)};
        if (std::abs(z) > 0.05)
            out.push_back(z);
    }
    return out;
}

EllipticContext test_context()
{
    EllipticContext ctx;
    ctx.tau = {0.13, 1.1};
    return ctx;
}

} // namespace

TEST(Theta, VanishesAtOrigin)
{
    EXPECT_LT(std::abs(theta1(Complex{0.0, 0.0}, test_context())), 1e-14);
}

TEST(Theta, OddFunction)
{
    const auto ctx = test_context();
    for (Complex z : seeded_points(11, 10))
        EXPECT_LT(std::abs(theta1(-z, ctx) + theta1(z, ctx)), tol);
}

TEST(Theta, MatchesClassicalSeries)
{
    const auto ctx = test_context();
    for (Complex z : seeded_points(12, 20))
        EXPECT_LT(scaled_diff(theta1(z, ctx), theta_oracle(z, ctx.tau)), tol);
}

TEST(Theta, QuasiPeriodicUnderUnitShift)
{
    const auto ctx = test_context();
    for (Complex z : seeded_points(13, 20)) {
        EXPECT_LT(scaled_diff(theta1(z + 1.0, ctx), -theta1(z, ctx)), tol);
        EXPECT_LT(scaled_diff(theta_oracle(z + 1.0, ctx.tau), -theta1(z, ctx)), tol);
    }
}

TEST(Theta, TruncationStable)
{
    auto ctx = test_context();
    auto ctx2 = ctx;
    ctx2.series_truncation = 2 * ctx.series_truncation;
    const EllipticFunctions e1(ctx), e2(ctx2);
    for (Complex z : seeded_points(14, 20)) {
        EXPECT_LT(scaled_diff(e1.theta1(z), e2.theta1(z)), tol);
        EXPECT_LT(scaled_diff(e1.wp(z), e2.wp(z)), tol);
    }
}

TEST(Theta, RejectsSmallImaginaryTau)
{
    EllipticContext ctx;
    ctx.tau = {0.0, 0.2};
    EXPECT_THROW(ctx.validate(), ParamError);
    ctx.tau = {0.0, 1.0};
    ctx.series_truncation = 0;
    EXPECT_THROW(ctx.validate(), ParamError);
}

TEST(Wp, MatchesQExpansion)
{
    const auto ctx = test_context();
    const EllipticFunctions e(ctx);
    for (Complex z : seeded_points(21, 20))
        EXPECT_LT(scaled_diff(e.wp(z), wp_oracle(z, ctx.tau)), tol);
}

TEST(Wp, EvenAndDoublyPeriodic)
{
    const auto ctx = test_context();
    const EllipticFunctions e(ctx);
    for (Complex z : seeded_points(22, 20)) {
        const Complex w = e.wp(z);
        EXPECT_LT(scaled_diff(e.wp(-z), w), tol);
        EXPECT_LT(scaled_diff(e.wp(z + 1.0), w), tol);
        EXPECT_LT(scaled_diff(e.wp(z + ctx.tau), w), tol);
    }
}

TEST(Wp, DoublePoleHasUnitCoefficient)
{
    const EllipticFunctions e(test_context());
    // z^2 wp(z) = 1 + O(z^4); extrapolate the sequence z = 1e-2 .. 1e-4.
    std::vector<double> values;
    for (double z : {1e-2, 1e-3, 1e-4}) {
        const Complex v = z * z * e.wp(Complex{z, 0.0});
        values.push_back(std::abs(v - 1.0));
    }
    EXPECT_LT(values.back(), 1e-7);
    EXPECT_LT(values[2], values[0] + 1e-12);
}

TEST(Wp, PoleOnLattice)
{
    const auto ctx = test_context();
    const EllipticFunctions e(ctx);
    EXPECT_THROW(e.wp(Complex{0.0, 0.0}), PoleError);
    EXPECT_THROW(e.wp(Complex{1.0, 0.0} + ctx.tau), PoleError);
}

TEST(Sigma, ProductIdentity)
{
    const auto ctx = test_context();
    const EllipticFunctions e(ctx);
    const auto zs = seeded_points(31, 20);
    const auto ls = seeded_points(32, 20);
    for (int k = 0; k < 20; ++k) {
        const Complex lhs = e.sigma(zs[k], ls[k]) * e.sigma(-zs[k], ls[k]);
        // oracle: independent q-series for wp
        const Complex rhs = wp_oracle(ls[k], ctx.tau) - wp_oracle(zs[k], ctx.tau);
        EXPECT_LT(scaled_diff(lhs, rhs), tol);
    }
}

TEST(Sigma, ZeroWhenShiftOnLattice)
{
    const auto ctx = test_context();
    const Complex lambda{0.21, 0.17};
    EXPECT_LT(std::abs(sigma_lambda(lambda, lambda, ctx)), 1e-12);
    EXPECT_LT(std::abs(sigma_lambda(lambda + 1.0, lambda, ctx)), 1e-12);
}

TEST(Sigma, UnitResidue)
{
    const EllipticFunctions e(test_context());
    const Complex lambda{0.21, 0.17};
    // z sigma(z) = 1 + O(z); Richardson on z and z/2 removes the linear term.
    const double z = 1e-4;
    const Complex r1 = z * e.sigma(Complex{z, 0.0}, lambda);
    const Complex r2 = (z / 2) * e.sigma(Complex{z / 2, 0.0}, lambda);
    EXPECT_LT(std::abs(2.0 * r2 - r1 - 1.0), 1e-7);
}

TEST(Sigma, PoleErrors)
{
    const auto ctx = test_context();
    EXPECT_THROW(sigma_lambda(Complex{0.0, 0.0}, Complex{0.2, 0.1}, ctx), PoleError);
    EXPECT_THROW(sigma_lambda(Complex{0.2, 0.1}, Complex{1.0, 0.0}, ctx), PoleError);
}

TEST(Elliptic, ExtendedPrecisionAgrees)
{
    const auto ctx = test_context();
    const EllipticFunctions standard(ctx), extended(ctx, Precision::extended);
    for (Complex z : seeded_points(41, 5)) {
        EXPECT_LT(scaled_diff(standard.wp(z), extended.wp(z)), tol);
        EXPECT_LT(scaled_diff(standard.sigma(z, {0.3, 0.2}), extended.sigma(z, {0.3, 0.2})), tol);
    }
    // Near the pole the extended evaluation keeps the Laurent behaviour.
    const double z = 1e-6;
    EXPECT_LT(std::abs(z * z * extended.wp(Complex{z, 0.0}) - 1.0), 1e-10);
}

// ------------------------------------------------------------------ sn

namespace {

// sn for real 0 <= k < 1 and real u by inverting the incomplete integral.
double sn_oracle(double u, double k)
{
    auto F = [k](double phi) {
        const int m = 2000;
        const double h = phi / m;
        double s = 0.0;
        for (int i = 0; i <= m; ++i) {
            const double t = i * h;
            const double w = (i == 0 || i == m) ? 1.0 : (i % 2 ? 4.0 : 2.0);
            s += w / std::sqrt(1.0 - k * k * std::sin(t) * std::sin(t));
        }
        return s * h / 3.0;
    };
    double lo = 0.0, hi = 1.6;
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        (F(mid) < u ? lo : hi) = mid;
    }
    return std::sin(0.5 * (lo + hi));
}

} // namespace

TEST(JacobiSn, TrivialValues)
{
    EXPECT_LT(std::abs(jacobi_sn(Complex{0.0, 0.0}, Complex{0.4, 0.0})), 1e-15);
    for (Complex u : seeded_points(51, 20, 1.0))
        EXPECT_LT(scaled_diff(jacobi_sn(u, Complex{0.0, 0.0}), std::sin(u)), tol);
}

TEST(JacobiSn, OddFunction)
{
    for (Complex u : seeded_points(52, 20, 1.0))
        EXPECT_LT(scaled_diff(jacobi_sn(-u, {0.6, 0.1}), -jacobi_sn(u, {0.6, 0.1})), tol);
}

TEST(JacobiSn, MatchesIntegralInversion)
{
    for (double k : {0.3, 0.7, 0.95})
        for (double u : {0.2, 0.6, 1.0})
            EXPECT_NEAR(jacobi_sn({u, 0.0}, {k, 0.0}).real(), sn_oracle(u, k), 1e-9);
}

TEST(JacobiSn, UnitModulusIsTanh)
{
    EXPECT_LT(scaled_diff(jacobi_sn({0.4, 0.2}, {1.0, 0.0}), std::tanh(Complex{0.4, 0.2})), tol);
}

TEST(JacobiSn, ReciprocalModulus)
{
    // sn(u, k) = sn(k u, 1/k) / k
    for (Complex k : {Complex{2.0, 0.0}, Complex{1.5, 0.7}})
        for (Complex u : seeded_points(53, 10, 0.5))
            EXPECT_LT(scaled_diff(jacobi_sn(u, k), jacobi_sn(k * u, 1.0 / k) / k), tol);
}

TEST(JacobiSn, NonFiniteModulusFails)
{
    EXPECT_THROW(jacobi_sn({0.3, 0.0}, {std::nan(""), 0.0}), ConvergenceError);
}

// --------------------------------------------------------------- psi

TEST(Psi, RationalWithEqualConstantsIsFlat)
{
    ParamSet p = ParamSet::generic(3);
    p.a = {1.3, 0.0};
    p.k_const = {1.3, 0.0};
    const PsiFamily fam(PsiKind::rational, p);
    const Complex expected = p.K() / (p.lambda_diff(1, 2) * p.lambda_diff(1, 2));
    for (Complex z : seeded_points(61, 5))
        EXPECT_LT(scaled_diff(fam.psi(1, 2, z), expected), tol);
}

TEST(Psi, EllipticAtSpectralDifference)
{
    ParamSet p = ParamSet::generic(3);
    const PsiFamily fam(PsiKind::elliptic, p, test_context());
    const Complex z = p.lambda_diff(1, 3);
    EXPECT_LT(scaled_diff(fam.psi(1, 3, z), p.A() / (z * z)), tol);
}

TEST(Psi, ReflectionSquareMatchesPsi)
{
    ParamSet p = ParamSet::generic(3);
    for (PsiKind kind : {PsiKind::elliptic, PsiKind::trig, PsiKind::rational}) {
        const PsiFamily fam(kind, p, test_context());
        for (Complex z : seeded_points(62, 10)) {
            const Complex prod = fam.g(1, 2, z) * fam.g(1, 2, -z);
            EXPECT_LT(scaled_diff(prod, fam.bracket_square(1, 2, z)), tol) << to_string(kind);
            EXPECT_LT(scaled_diff(fam.psi(1, 2, z), fam.psi(2, 1, z)), tol);
        }
    }
}

TEST(Psi, TrigIsLimitOfElliptic)
{
    ParamSet trig = ParamSet::generic(3);
    trig.b = {0.8, 0.0};
    trig.k_const = {1.1, 0.0};
    // wp(z) -> pi^2 csc^2(pi z) - pi^2/3 as Im tau grows: rescale b, K, lambda.
    ParamSet ell = trig;
    ell.b = trig.b / pi;
    ell.k_const = -trig.k_const / pi;
    for (auto& l : ell.lambda)
        l *= ell.b;
    EllipticContext ctx;
    ctx.tau = {0.0, 20.0};
    const PsiFamily ft(PsiKind::trig, trig), fe(PsiKind::elliptic, ell, ctx);
    for (Complex z : seeded_points(63, 10)) {
        EXPECT_LT(scaled_diff(fe.psi(1, 2, z), ft.psi(1, 2, z)), 1e-8);
        EXPECT_LT(scaled_diff(fe.g(1, 2, z), ft.g(1, 2, z)), 1e-8);
    }
}

TEST(Psi, RationalIsLimitOfTrig)
{
    ParamSet rat = ParamSet::generic(3);
    const PsiFamily fr(PsiKind::rational, rat);
    const Complex z{0.31, -0.22};
    double prev = 1e300;
    for (double b : {1e-2, 1e-3}) {
        ParamSet trig = rat;
        trig.b = {b, 0.0};
        trig.k_const = rat.k_const * b;
        const PsiFamily ft(PsiKind::trig, trig);
        const double err = scaled_diff(ft.psi(1, 2, z), fr.psi(1, 2, z));
        EXPECT_LT(err, prev);
        prev = err;
    }
    EXPECT_LT(prev, 1e-6);
}

TEST(Psi, DegenerateSpectralParametersRejected)
{
    ParamSet p = ParamSet::generic(3);
    p.lambda[1] = p.lambda[0];
    EXPECT_THROW(PsiFamily(PsiKind::elliptic, p), ParamError);
    ParamSet q = ParamSet::generic(3);
    q.lambda[1] = q.lambda[0] + test_context().tau;
    EXPECT_THROW(PsiFamily(PsiKind::elliptic, q, test_context()), ParamError);
}

TEST(Psi, PoleAtOrigin)
{
    const PsiFamily fam(PsiKind::rational, ParamSet::generic(2));
    EXPECT_THROW(fam.psi(1, 2, Complex{0.0, 0.0}), PoleError);
}

// ------------------------------------------------------- exact scalars

TEST(ExactScalar, SwapActionOnDifference)
{
    const ExactScalar d = ExactScalar::x(1) - ExactScalar::x(2);
    EXPECT_EQ(d.swap_action(1, 2), -d);
    EXPECT_EQ(d.swap_action(1, 2).swap_action(1, 2), d);
}

TEST(ExactScalar, InverseOfDifference)
{
    const ExactScalar d = ExactScalar::x(1) - ExactScalar::x(2);
    EXPECT_EQ(d.invert() * d, ExactScalar(1));
    EXPECT_THROW(ExactScalar().invert(), DivisionByZero);
}

TEST(ExactScalar, SwapFixesPairParameters)
{
    const ExactScalar p = ExactScalar::p(1, 2) * ExactScalar::x(1);
    EXPECT_EQ(p.swap_action(1, 2), ExactScalar::p(2, 1) * ExactScalar::x(2));
}

TEST(ExactScalar, FieldAxiomsOnRandomTriples)
{
    UniformStream rng(71);
    auto random_poly = [&]() {
        Polynomial p;
        for (int t = 0; t < 3; ++t) {
            Polynomial term(static_cast<long>(rng.next_u64() % 7) - 3);
            for (int v = 1; v <= 3; ++v)
                term = term * pow(Polynomial::x(v), static_cast<int>(rng.next_u64() % 2));
            if (rng.next() < 0.3)
                term = term * Polynomial::p(1, 2);
            p += term;
        }
        return p.is_zero() ? Polynomial(1) : p;
    };
    auto random_scalar = [&]() { return ExactScalar(random_poly(), random_poly()); };
    for (int trial = 0; trial < 15; ++trial) {
        const ExactScalar a = random_scalar(), b = random_scalar(), c = random_scalar();
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a + b, b + a);
        EXPECT_EQ(a * b, b * a);
        if (!a.is_zero())
            EXPECT_EQ(a * a.invert(), ExactScalar(1));
        EXPECT_EQ(a - a, ExactScalar(0));
    }
}

TEST(ExactScalar, CanonicalForm)
{
    // (x1^2 - x2^2) / (2 x1 - 2 x2) = (x1 + x2) / 2
    const Polynomial x1 = Polynomial::x(1), x2 = Polynomial::x(2);
    const ExactScalar r(x1 * x1 - x2 * x2, Polynomial(2) * (x1 - x2));
    EXPECT_TRUE(r.is_polynomial());
    EXPECT_EQ(r, ExactScalar(Polynomial(mpq_class(1, 2)) * (x1 + x2)));
    EXPECT_EQ(r.denominator().leading_coeff(), 1);
}

TEST(Polynomial, GcdAndExactDivision)
{
    const Polynomial x1 = Polynomial::x(1), x2 = Polynomial::x(2), p = Polynomial::p(1, 3);
    const Polynomial f = (x1 - x2) * (x1 + p), g = (x1 - x2) * (x2 * x2 + 1);
    EXPECT_EQ(gcd(f, g), x1 - x2);
    EXPECT_EQ(f.divide_exact(x1 + p), x1 - x2);
    EXPECT_THROW(f.divide_exact(x2 + 1), DivisionFailure);
}

TEST(Polynomial, GcdAgreesWithRemainderSequence)
{
    UniformStream rng(72);
    auto random_poly = [&](int terms) {
        Polynomial p;
        for (int t = 0; t < terms; ++t) {
            Polynomial term(static_cast<long>(rng.next_u64() % 9) - 4);
            for (int v = 1; v <= 3; ++v)
                term = term * pow(Polynomial::x(v), static_cast<int>(rng.next_u64() % 3));
            if (rng.next() < 0.4)
                term = term * Polynomial::p(1, 3);
            p += term;
        }
        return p.is_zero() ? Polynomial::x(1) + 1 : p;
    };
    for (int trial = 0; trial < 20; ++trial) {
        const Polynomial common = random_poly(2);
        const Polynomial a = random_poly(3) * common, b = random_poly(3) * common;
        const Polynomial g = gcd(a, b);
        EXPECT_EQ(g, prs_gcd(a, b));
        EXPECT_NO_THROW(g.divide_exact(common.monic()));
        EXPECT_TRUE(a.try_divide(g).has_value());
        EXPECT_TRUE(b.try_divide(g).has_value());
    }
}

TEST(Polynomial, DeglexOrder)
{
    const Polynomial f = Polynomial::x(2) * Polynomial::x(2) + Polynomial::x(1) * Polynomial::p(1, 2) + Polynomial::x(1);
    EXPECT_EQ(f.leading_monomial(), Monomial::var(x_var(1)) * Monomial::var(p_var(1, 2)));
    EXPECT_EQ(f.to_string(), "x1*p12 + x2^2 + x1");
}

// -------------------------------------------------------- numeric scalars

TEST(NumericScalar, TwistIsInvolution)
{
    const auto f = NumericScalar::leaf([](PointView xi) { return xi[0] * xi[0] + 2.0 * xi[1] - xi[2]; }, "f");
    const LinearAction s12 = LinearAction::transposition(3, 1, 2);
    const Point xi = {{0.1, 0.2}, {0.3, -0.4}, {-0.5, 0.6}};
    EXPECT_EQ(f.twisted(s12).twisted(s12).to_string(), f.to_string());
    EXPECT_LT(std::abs(f.twisted(s12).eval(xi) - (xi[1] * xi[1] + 2.0 * xi[0] - xi[2])), 1e-15);
}

TEST(NumericScalar, NestedTwistComposition)
{
    const auto f = NumericScalar::leaf([](PointView xi) { return xi[0] + 10.0 * xi[1] + 100.0 * xi[2]; }, "f");
    const LinearAction s12 = LinearAction::transposition(3, 1, 2);
    const LinearAction s23 = LinearAction::transposition(3, 2, 3);
    const Point xi = {{1.0, 0.0}, {2.0, 0.0}, {3.0, 0.0}};
    // g(xi) = f(s12 xi); h(xi) = g(s23 xi) = f(s12 s23 xi)
    const NumericScalar h = f.twisted(s12).twisted(s23);
    const Point inner = (s12 * s23).apply(xi);
    EXPECT_LT(std::abs(h.eval(xi) - f.eval(inner)), 1e-12);
}

TEST(NumericScalar, ConstantFolding)
{
    const NumericScalar a(2.0), b(Complex{0.0, 1.0});
    EXPECT_TRUE((a * b - b * a).is_zero());
    EXPECT_EQ(*(a + b).constant(), (Complex{2.0, 1.0}));
}

// ------------------------------------------------------------ sampling

TEST(SamplePlan, DeterministicAndRespectsMargin)
{
    SamplePlan plan;
    plan.rng_seed = 99;
    plan.num_points = 20;
    const auto a = plan.generate(4), b = plan.generate(4);
    ASSERT_EQ(a.size(), 20u);
    EXPECT_EQ(a, b);
    for (const auto& p : a)
        EXPECT_TRUE(plan.default_accept(p));
    plan.rng_seed = 100;
    EXPECT_NE(plan.generate(4), a);
}

TEST(SamplePlan, RejectsTooFewPoints)
{
    SamplePlan plan;
    plan.num_points = 2;
    EXPECT_THROW(plan.generate(3), ParamError);
}

TEST(SamplePlan, JobSeedsDiffer)
{
    EXPECT_NE(job_seed(7, "a"), job_seed(7, "b"));
    EXPECT_EQ(job_seed(7, "a"), job_seed(7, "a"));
}

// -------------------------------------------------------------- params

TEST(ParamSet, JsonRoundTrip)
{
    const ParamSet p = ParamSet::generic(4);
    const auto j = to_json(p);
    const ParamSet q = param_set_from_json(j);
    EXPECT_EQ(to_json(q), j);
    EXPECT_EQ(q.A(), q.a * q.a);
    auto bad = j;
    bad["A"] = nlohmann::json::array({5.0, 0.0});
    EXPECT_THROW(param_set_from_json(bad), ConfigError);
}

TEST(ParamSet, EllipticContextJson)
{
    EllipticContext ctx = test_context();
    const auto back = elliptic_context_from_json(to_json(ctx));
    EXPECT_EQ(back.tau, ctx.tau);
    EXPECT_EQ(back.series_truncation, ctx.series_truncation);
}

TEST(NumericScalar, SharedTermsCancel)
{
    const auto c = NumericScalar::coordinate(1) * NumericScalar::coordinate(2);
    EXPECT_TRUE((c - c).is_zero());
    const auto d = NumericScalar(2.0) * c + NumericScalar::coordinate(3) - c;
    const Point xi{Complex{0.5, 0.1}, Complex{-0.3, 0.2}, Complex{0.7, 0.0}};
    EXPECT_LT(std::abs(d.eval(xi) - (xi[0] * xi[1] + xi[2])), 1e-15);
}
