#include "efk/errors.hpp"
#include "efk/nichols/root_system.hpp"
#include "efk/nichols/symmetrizer.hpp"
#include "efk/scalars/sample_plan.hpp"

#include <gtest/gtest.h>

#include <numeric>

using namespace efk;
using namespace efk::nichols;

namespace {

std::vector<RootSystemData> all_types()
{
    return {RootSystemData::A(3), RootSystemData::A(4), RootSystemData::B(2), RootSystemData::B(3),
            RootSystemData::G2()};
}

int positive_index(const RootSystemData& rs, const std::string& label)
{
    for (int k = 0; k < rs.num_positive(); ++k)
        if (rs.label(k) == label)
            return k;
    return -1;
}

} // namespace

TEST(RootSystem, Sizes)
{
    EXPECT_EQ(RootSystemData::A(3).num_positive(), 3);
    EXPECT_EQ(RootSystemData::A(5).num_positive(), 10);
    EXPECT_EQ(RootSystemData::B(2).num_positive(), 4);
    EXPECT_EQ(RootSystemData::B(3).num_positive(), 9);
    EXPECT_EQ(RootSystemData::G2().num_positive(), 6);
    EXPECT_EQ(RootSystemData::from_name("A2").name(), "A2");
    EXPECT_THROW(RootSystemData::from_name("E8"), ParamError);
    const auto b2 = RootSystemData::B(2);
    EXPECT_EQ(b2.label(0), "[12]");
    EXPECT_EQ(b2.label(1), "[1bar2]");
    EXPECT_EQ(b2.label(2), "[1]");
    EXPECT_EQ(b2.label(3), "[2]");
}

TEST(RootSystem, ReflectionsAreInvolutionsOfTheRootSet)
{
    for (const auto& rs : all_types()) {
        for (int a = 0; a < rs.num_roots(); ++a) {
            std::vector<int> image = rs.reflection_table(a);
            for (int b = 0; b < rs.num_roots(); ++b)
                EXPECT_EQ(rs.reflect(a, rs.reflect(a, b)), b) << rs.name();
            std::sort(image.begin(), image.end());
            std::vector<int> all(rs.num_roots());
            std::iota(all.begin(), all.end(), 0);
            EXPECT_EQ(image, all) << rs.name();
            const auto [pos, sign] = rs.to_positive(rs.reflect(a, a));
            EXPECT_EQ(pos, rs.to_positive(a).first);
            EXPECT_EQ(sign, -rs.to_positive(a).second);
        }
    }
}

TEST(RootSystem, FundamentalWeightsAreDualToSimpleCoroots)
{
    for (const auto& rs : all_types())
        for (int i = 0; i < rs.rank(); ++i)
            for (int j = 0; j < rs.rank(); ++j) {
                const auto& pi = rs.fundamental_weight(i);
                const auto& co = rs.coroot(rs.simple()[j]);
                double s = 0.0;
                for (int t = 0; t < rs.dim(); ++t)
                    s += pi[t] * co[t];
                EXPECT_NEAR(s, i == j ? 1.0 : 0.0, 1e-12) << rs.name();
            }
}

TEST(Braiding, Examples)
{
    const auto a2 = RootSystemData::A(3);
    const int r12 = positive_index(a2, "[12]"), r23 = positive_index(a2, "[23]"), r13 = positive_index(a2, "[13]");
    const BraidEntry e = a2.braiding(r12, r23);
    EXPECT_EQ(e.image, r13);
    EXPECT_EQ(e.moved, r12);
    EXPECT_EQ(e.sign, 1);
    for (int a = 0; a < a2.num_positive(); ++a) {
        const BraidEntry self = a2.braiding(a, a);
        EXPECT_EQ(self.image, a);
        EXPECT_EQ(self.sign, -1);
    }
    // [12] and [1bar2] are orthogonal in B2.
    const auto b2 = RootSystemData::B(2);
    const BraidEntry orth = b2.braiding(0, 1);
    EXPECT_EQ(orth.image, 1);
    EXPECT_EQ(orth.sign, 1);
}

TEST(Braiding, YangBaxterAndWordIndependence)
{
    for (const auto& rs : all_types())
        EXPECT_TRUE(satisfies_yang_baxter(rs)) << rs.name();
    const auto a2 = RootSystemData::A(3);
    for (int d = 1; d <= 5; ++d)
        EXPECT_TRUE(lift_is_word_independent(a2, d)) << d;
    const auto b2 = RootSystemData::B(2);
    for (int d = 1; d <= 4; ++d)
        EXPECT_TRUE(lift_is_word_independent(b2, d)) << d;
}

TEST(Braiding, LiftsOfSmallPermutations)
{
    const auto b2 = RootSystemData::B(2);
    EXPECT_EQ(braided_lift(b2, {0, 1, 2}), SignedPerm::identity(64));
    EXPECT_EQ(braided_lift(b2, {1, 0}), braiding_at(b2, 2, 0));
    // s1 s2 s1 = s2 s1 s2 as the longest element of S3.
    EXPECT_EQ(lift_along(b2, 3, {0, 1, 0}), lift_along(b2, 3, {1, 0, 1}));
    EXPECT_EQ(all_reduced_words({2, 1, 0}).size(), 2U);
    EXPECT_EQ(all_reduced_words({3, 2, 1, 0}).size(), 16U);
}

TEST(Symmetrizer, LowDegrees)
{
    const auto a2 = RootSystemData::A(3);
    const SymmetrizerMatrix s1 = symmetrizer(a2, 1);
    for (long j = 0; j < 3; ++j)
        for (long i = 0; i < 3; ++i)
            EXPECT_EQ(s1.entry(i, j), i == j ? 1 : 0);
    const SymmetrizerMatrix s2 = symmetrizer(a2, 2);
    const SignedPerm psi = braiding_at(a2, 2, 0);
    for (long j = 0; j < 9; ++j)
        for (long i = 0; i < 9; ++i)
            EXPECT_EQ(s2.entry(i, j), (i == j ? 1 : 0) + (psi.target[j] == i ? psi.sign[j] : 0));
    EXPECT_EQ(exact_rank(a2, s2), 4);
    EXPECT_EQ(exact_rank(a2, symmetrizer(a2, 0)), 1);
}

TEST(Symmetrizer, RecursiveAssemblyAgrees)
{
    const auto a2 = RootSystemData::A(3);
    for (int d = 0; d <= 5; ++d)
        EXPECT_EQ(symmetrizer(a2, d), symmetrizer_recursive(a2, d)) << d;
    const auto b2 = RootSystemData::B(2);
    for (int d = 0; d <= 4; ++d)
        EXPECT_EQ(symmetrizer(b2, d), symmetrizer_recursive(b2, d)) << d;
}

TEST(Symmetrizer, BudgetExceeded)
{
    const auto b2 = RootSystemData::B(2);
    EXPECT_THROW(symmetrizer(b2, 6, 1024), BudgetExceeded);
    HilbertOptions opts;
    opts.allow_inferred = false;
    opts.numeric_budget = 1024;
    EXPECT_THROW(hilbert_coeff(b2, 6, opts), BudgetExceeded);
    opts.exact_budget = 8192;
    EXPECT_THROW(hilbert_coeff(b2, 2, opts), ParamError);
}

TEST(Hilbert, B2MatchesProductFormula)
{
    const auto b2 = RootSystemData::B(2);
    // Coefficients of (1+t)^4 (1+t^2)^2.
    const std::vector<long> expected{1, 4, 8, 12, 14, 12, 8, 4, 1, 0};
    const auto series = hilbert_series(b2, 9);
    long total = 0;
    for (int d = 0; d <= 9; ++d) {
        EXPECT_EQ(series[d].rank, expected[d]) << d;
        EXPECT_EQ(series[d].method, d <= 5 ? "exact" : "inferred") << d;
        total += series[d].rank;
    }
    EXPECT_EQ(total, 64);
}

TEST(Hilbert, A2RanksAndNumericCrossCheck)
{
    const auto a2 = RootSystemData::A(3);
    const auto series = hilbert_series(a2, 4);
    const std::vector<long> expected{1, 3, 4, 3, 1};
    long total = 0;
    for (int d = 0; d <= 4; ++d) {
        EXPECT_EQ(series[d].rank, expected[d]);
        total += series[d].rank;
        if (d > 0)
            EXPECT_EQ(numeric_rank(a2, symmetrizer(a2, d)), series[d].rank);
    }
    EXPECT_EQ(total, 12);
    EXPECT_EQ(hilbert_coeff(a2, 5).rank, 0);
    const auto b2 = RootSystemData::B(2);
    EXPECT_EQ(numeric_rank(b2, symmetrizer(b2, 3)), 12);
}

TEST(Kernel, B2RelationFamilies)
{
    const auto b2 = RootSystemData::B(2);
    for (int k = 1; k <= 5; ++k)
        for (const auto& rel : b2_relation_family(k))
            EXPECT_TRUE(kernel_contains(b2, rel)) << "family " << k;
}

TEST(Kernel, RandomTensorsAreNotInKernel)
{
    const auto b2 = RootSystemData::B(2);
    UniformStream rng(91);
    for (int trial = 0; trial < 10; ++trial) {
        BraidedTensor t;
        t.degree = 2;
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                t.add({a, b}, static_cast<long>(rng.next() * 19) - 9);
        EXPECT_FALSE(kernel_contains(b2, t));
    }
    // A sign flip in relation (iii) leaves the kernel.
    BraidedTensor broken = b2_relation_family(3)[0];
    broken.add({2, 1}, -2);
    EXPECT_FALSE(kernel_contains(b2, broken));
}

TEST(Kernel, MatchesMatrixProduct)
{
    const auto b2 = RootSystemData::B(2);
    const auto s = symmetrizer(b2, 2);
    for (const auto& rel : b2_relation_family(3)) {
        const BraidedTensor image = apply_symmetrizer(b2, rel);
        for (long i = 0; i < s.size; ++i) {
            mpq_class acc = 0;
            for (const auto& [seq, c] : rel.terms)
                acc += c * s.entry(i, basis_index(seq, 4));
            const auto it = image.terms.find(basis_sequence(i, 4, 2));
            EXPECT_EQ(acc, it == image.terms.end() ? mpq_class(0) : it->second);
        }
    }
}
