#include "efk/errors.hpp"
#include "efk/freealg/alg_elem.hpp"
#include "efk/freealg/membership.hpp"
#include "efk/freealg/relations.hpp"
#include "efk/scalars/sample_plan.hpp"

#include <gtest/gtest.h>

using namespace efk;
using namespace efk::freealg;

namespace {

constexpr double tol = 1e-8;

ExactElem ex_bracket(int n, int a, int b) { return ExactElem::bracket(n, a, b); }
NumericElem nu_bracket(int n, int a, int b) { return NumericElem::bracket(n, a, b); }

ExactElem ex_scalar(int n, const ExactScalar& c) { return ExactElem::scalar(n, c); }
NumericElem nu_scalar(int n, const NumericScalar& c) { return NumericElem::scalar(n, c); }

RelationSet elliptic_set(int n)
{
    EllipticContext ctx;
    ctx.tau = {0.1, 1.2};
    return RelationSet::family(n, PsiKind::elliptic, ParamSet::generic(n), ctx);
}

std::vector<Complex> lambda_offsets(int n)
{
    std::vector<Complex> out;
    for (int i = 0; i < n; ++i)
        out.push_back({0.7 * i + 0.2, 0.3 * i * i - 0.1});
    return out;
}

// Random exact element with linear x coefficients, words up to length 2.
ExactElem random_exact(int n, UniformStream& rng)
{
    ExactElem e(n);
    for (int t = 0; t < 4; ++t) {
        const int len = static_cast<int>(rng.next() * 3);
        const auto words = all_words(n, len);
        const Word& w = words[static_cast<std::size_t>(rng.next() * words.size())];
        const int k = 1 + static_cast<int>(rng.next() * n);
        const long c = static_cast<long>(rng.next() * 7) - 3;
        e.add_term(w, ExactScalar(c) + ExactScalar::x(k) * ExactScalar(static_cast<long>(t + 1)));
    }
    return e;
}

NumericScalar wave(int k, double f)
{
    return NumericScalar::leaf([k, f](PointView xi) { return std::sin(f * xi[k - 1]) + 0.5; },
                               "wave" + std::to_string(k));
}

std::vector<NumericElem> generators(const RelationSet& rs) { return relation_generators(rs); }

} // namespace

TEST(Word, BracketOrientation)
{
    const BracketGen g = BracketGen::make(3, 1);
    EXPECT_EQ(g.i, 1);
    EXPECT_EQ(g.j, 3);
    EXPECT_EQ(g.sign, -1);
    EXPECT_EQ(BracketGen::from_id(g.id()).j, 3);
    EXPECT_THROW(BracketGen::make(2, 2), ParamError);
}

TEST(Word, GradeOfWord)
{
    // [12][23] has grade s12 s23: 1 -> 2 -> ... as a composition on indices.
    const Word w{static_cast<std::uint8_t>(pair_id(1, 2)), static_cast<std::uint8_t>(pair_id(2, 3))};
    const Perm q = grade(w, 3);
    EXPECT_EQ(q(3), 1);
    EXPECT_EQ(q(1), 2);
    EXPECT_EQ(q(2), 3);
    EXPECT_EQ(word_to_string(w), "[12][23]");
    EXPECT_TRUE(grade(Word{}, 3).is_identity());
}

TEST(AlgElem, BracketTwistsCoefficient)
{
    const ExactElem lhs = ex_bracket(3, 1, 2) * ex_scalar(3, ExactScalar::x(1));
    const ExactElem rhs = ex_scalar(3, ExactScalar::x(2)) * ex_bracket(3, 1, 2);
    EXPECT_EQ(lhs, rhs);
    EXPECT_EQ(ex_bracket(3, 2, 1), -ex_bracket(3, 1, 2));
}

TEST(AlgElem, AssociativeWithUnit)
{
    UniformStream rng(81);
    for (int trial = 0; trial < 10; ++trial) {
        const ExactElem a = random_exact(3, rng), b = random_exact(3, rng), c = random_exact(3, rng);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(ExactElem::one(3) * a, a);
        EXPECT_EQ(a * ExactElem::one(3), a);
        EXPECT_EQ(a * (b + c), a * b + a * c);
    }
}

TEST(AlgElem, RankMismatchRejected)
{
    EXPECT_THROW(ex_bracket(3, 1, 2) * ex_bracket(4, 1, 2), BackendMismatch);
    EXPECT_THROW(ExactElem(9), ParamError);
}

TEST(AlgElem, JsonRoundTrip)
{
    ExactElem e = ex_bracket(4, 3, 1) * ex_bracket(4, 2, 4) + ex_scalar(4, mpq_class(3, 2));
    e += ex_scalar(4, mpq_class(-5, 7)) * ex_bracket(4, 1, 2);
    EXPECT_EQ(exact_elem_from_json(4, to_json(e)), e);
    const NumericElem v = numeric_elem_from_json(4, to_json(to_numeric(e, [](int, int) { return Complex{}; })));
    EXPECT_EQ(v.size(), e.size());
}

TEST(Relations, GeneratorCounts)
{
    auto count = [](const RelationSet& rs, RelationType t) {
        int c = 0;
        for (const Relation& r : rs.relations())
            c += r.type == t;
        return c;
    };
    const RelationSet two = RelationSet::psi_zero(2);
    EXPECT_EQ(two.relations().size(), 1U);
    const RelationSet three = RelationSet::psi_zero(3);
    EXPECT_EQ(count(three, RelationType::commute), 0);
    EXPECT_EQ(count(three, RelationType::three_term), 2);
    const RelationSet four = RelationSet::psi_zero(4);
    EXPECT_EQ(count(four, RelationType::square), 6);
    EXPECT_EQ(count(four, RelationType::commute), 3);
    EXPECT_EQ(count(four, RelationType::three_term), 8);
    const RelationSet five = RelationSet::psi_zero(5);
    EXPECT_EQ(count(five, RelationType::three_term), 20);
    EXPECT_EQ(count(five, RelationType::commute), 15);
}

TEST(Relations, MultiparamNeedsDistinctOffsets)
{
    EXPECT_THROW(RelationSet::multiparam(3, 1.0, {0.0, 1.0, 1.0}), ParamError);
    Degeneration d;
    d.kind = Degeneration::Kind::multiparam;
    d.Lambda = {0.0, 0.0, 2.0};
    EXPECT_THROW(degenerate(RelationSet::psi_zero(3), d), ParamError);
}

TEST(Membership, EachGeneratorIsMember)
{
    for (int n : {3, 4}) {
        const RelationSet rs = elliptic_set(n);
        for (const NumericElem& g : generators(rs)) {
            const auto cert = is_zero_mod_ideal(g, rs);
            EXPECT_TRUE(cert.member) << g.to_string() << " residual " << cert.max_residual;
        }
    }
}

TEST(Membership, TwoSidedCombinationIsMember)
{
    const int n = 3;
    const RelationSet rs = elliptic_set(n);
    const auto gens = generators(rs);
    NumericElem target(n);
    target += nu_scalar(n, wave(1, 1.3)) * nu_bracket(n, 1, 3) * gens[0] * nu_scalar(n, wave(2, 0.7));
    target += gens[4] * nu_bracket(n, 2, 3) * nu_scalar(n, wave(3, 1.1));
    target += nu_bracket(n, 2, 3) * gens[1] - nu_scalar(n, NumericScalar(2.5)) * gens[2] * nu_bracket(n, 1, 2);
    const auto cert = is_zero_mod_ideal(target, rs);
    EXPECT_TRUE(cert.member) << cert.max_residual;
    EXPECT_EQ(cert.residuals.size(), 5U);
    EXPECT_EQ(cert.degree_bound, 3);
}

TEST(Membership, NonMembersHaveLargeResidual)
{
    const int n = 3;
    const RelationSet rs = elliptic_set(n);
    const NumericElem single = nu_bracket(n, 1, 2);
    auto cert = is_zero_mod_ideal(single, rs);
    EXPECT_FALSE(cert.member);
    EXPECT_GT(cert.max_residual, 1e3 * tol);

    // [12]^2 alone differs from the ideal by a nonzero function.
    cert = is_zero_mod_ideal(nu_bracket(n, 1, 2) * nu_bracket(n, 1, 2), rs);
    EXPECT_FALSE(cert.member);
    EXPECT_GT(cert.max_residual, 1e3 * tol);

    // Only one term of the three-term relation.
    cert = is_zero_mod_ideal(nu_bracket(n, 1, 2) * nu_bracket(n, 2, 3) + nu_bracket(n, 2, 3) * nu_bracket(n, 3, 1), rs);
    EXPECT_FALSE(cert.member);
    EXPECT_GT(cert.max_residual, 1e3 * tol);

    // Wrong constant in the square relation.
    NumericElem shifted = generators(rs)[0] + nu_scalar(n, NumericScalar(0.01));
    cert = is_zero_mod_ideal(shifted, rs);
    EXPECT_FALSE(cert.member);
    EXPECT_GT(cert.max_residual, 1e3 * tol);
}

TEST(Membership, DunklElementsCommute)
{
    const int n = 3;
    const RelationSet rs = elliptic_set(n);
    auto theta = [&](int i) {
        NumericElem t(n);
        for (int j = 1; j <= n; ++j)
            if (j != i)
                t += nu_bracket(n, i, j);
        return t;
    };
    const auto cert = is_zero_mod_ideal(theta(1) * theta(2) - theta(2) * theta(1), rs);
    EXPECT_TRUE(cert.member) << cert.max_residual;
    // Without the ideal the commutator is not zero.
    EXPECT_FALSE((theta(1) * theta(2) - theta(2) * theta(1)).is_zero());
}

TEST(Membership, ExactBackendPsiZeroAndMultiparam)
{
    const int n = 4;
    const RelationSet zero = RelationSet::psi_zero(n);
    EXPECT_TRUE(is_zero_mod_ideal(ex_bracket(n, 1, 2) * ex_bracket(n, 1, 2), zero).member);
    EXPECT_FALSE(is_zero_mod_ideal(ex_bracket(n, 1, 2) * ex_bracket(n, 1, 3), zero).member);

    const RelationSet multi = RelationSet::multiparam(n, 1.0, lambda_offsets(n));
    ExactElem sq = ex_bracket(n, 1, 2) * ex_bracket(n, 1, 2) - ex_scalar(n, ExactScalar::p(1, 2));
    auto cert = is_zero_mod_ideal(sq, multi);
    EXPECT_TRUE(cert.member);
    EXPECT_EQ(cert.substitutions, 3);
    // The central parameter crosses brackets untwisted, x does not.
    ExactElem moved = ex_scalar(n, ExactScalar::x(1)) * sq * ex_bracket(n, 3, 4) -
                      ex_scalar(n, ExactScalar::x(1)) * ex_bracket(n, 3, 4) * sq;
    EXPECT_TRUE(is_zero_mod_ideal(moved, multi).member);
    cert = is_zero_mod_ideal(ex_bracket(n, 1, 2) * ex_bracket(n, 1, 2) - ex_scalar(n, ExactScalar::p(1, 3)), multi);
    EXPECT_FALSE(cert.member);
    EXPECT_GT(cert.max_residual, 0.0);
}

TEST(Membership, ExactAndNumericAgree)
{
    const int n = 3;
    const RelationSet multi = RelationSet::multiparam(n, 1.5, lambda_offsets(n));
    const auto p_value = [&](int i, int j) { return multi.c(i, j); };
    const auto gens = exact_relation_generators(multi);
    ExactElem member = ex_scalar(n, ExactScalar::x(2)) * ex_bracket(n, 1, 3) * gens[0] + gens[3] * ex_bracket(n, 1, 2);
    ExactElem other = member + ex_scalar(n, ExactScalar::x(1)) * ex_bracket(n, 2, 3);
    for (const auto& [target, expected] : {std::pair{member, true}, std::pair{other, false}}) {
        const auto exact = is_zero_mod_ideal(target, multi);
        const auto numeric = is_zero_mod_ideal(to_numeric(target, p_value), multi);
        EXPECT_EQ(exact.member, expected);
        EXPECT_EQ(numeric.member, expected) << numeric.max_residual;
    }
}

TEST(Membership, ExactBackendRejectsFamily)
{
    EXPECT_THROW(is_zero_mod_ideal(ex_bracket(3, 1, 2), elliptic_set(3)), BackendMismatch);
}

TEST(Membership, DegreeBound)
{
    const RelationSet rs = RelationSet::psi_zero(3);
    const ExactElem cube = ex_bracket(3, 1, 2) * ex_bracket(3, 1, 2) * ex_bracket(3, 1, 2);
    MembershipOptions opts;
    opts.degree_bound = 2;
    EXPECT_THROW(is_zero_mod_ideal(cube, rs, opts), DegreeBoundExceeded);
    opts.degree_bound = -1;
    EXPECT_TRUE(is_zero_mod_ideal(cube, rs, opts).member);
    opts.max_block_words = 4;
    EXPECT_THROW(is_zero_mod_ideal(cube, rs, opts), DegreeBoundExceeded);
}

TEST(Membership, ReproducibleFromSeed)
{
    const RelationSet rs = elliptic_set(3);
    const NumericElem t = nu_bracket(3, 1, 2) * nu_bracket(3, 2, 3);
    const auto a = is_zero_mod_ideal(t, rs), b = is_zero_mod_ideal(t, rs);
    EXPECT_EQ(a.residuals, b.residuals);
    EXPECT_EQ(a.to_json()["sample_plan"]["seed"], 1);
}

TEST(Membership, PerturbedIdealElementsRejected)
{
    const int n = 3;
    const RelationSet rs = elliptic_set(n);
    const auto gens = generators(rs);
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        UniformStream rng(seed);
        auto pick_word = [&](int len) {
            const auto words = all_words(n, len);
            return words[static_cast<std::size_t>(rng.next() * words.size())];
        };
        NumericElem member(n);
        for (int t = 0; t < 3; ++t) {
            const auto& g = gens[static_cast<std::size_t>(rng.next() * gens.size())];
            const Complex c{rng.symmetric(2.0), rng.symmetric(2.0)};
            member += nu_scalar(n, NumericScalar(c)) * NumericElem::monomial(n, pick_word(1), 1) * g;
        }
        const auto ok = is_zero_mod_ideal(member, rs);
        EXPECT_TRUE(ok.member) << "seed " << seed << " residual " << ok.max_residual;

        const int len = static_cast<int>(rng.next() * 4);
        const Complex fresh{rng.symmetric(1.0), rng.symmetric(1.0)};
        const NumericElem perturbed = member + NumericElem::monomial(n, pick_word(len), NumericScalar(fresh));
        const auto bad = is_zero_mod_ideal(perturbed, rs);
        EXPECT_FALSE(bad.member) << "seed " << seed;
        EXPECT_GT(bad.max_residual, 1e3 * tol) << "seed " << seed << " word length " << len;
    }
}
