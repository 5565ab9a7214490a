#include "projopt/angles.hpp"
#include "projopt/errors.hpp"
#include "projopt/projmethods.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace projopt;
using oracle::kPi;

namespace {

Subspace line(double deg)
{
    return Subspace::from_spanning(oracle::line(deg * kPi / 180));
}

Subspace axis(Index n, Index j)
{
    return Subspace::from_spanning(oracle::axis(n, j));
}

Subspace span_axes(Index n, std::initializer_list<Index> js)
{
    Matrix a = Matrix::Zero(n, static_cast<Index>(js.size()));
    Index c = 0;
    for (Index j : js) {
        a(j, c++) = 1.0;
    }
    return Subspace::from_spanning(a);
}

// Random family with a generic shared part, r <= 5, n <= 30.
std::vector<Subspace> random_family(std::mt19937_64& gen, int r, Index n)
{
    const Index common = std::uniform_int_distribution<Index>(0, 2)(gen);
    const Matrix frame = oracle::random_basis(gen, n, n);
    std::vector<Subspace> list;
    for (int i = 0; i < r; ++i) {
        const Index extra = std::uniform_int_distribution<Index>(1, std::max<Index>(1, (n - common) / r))(gen);
        Matrix q(n, common + extra);
        q << frame.leftCols(common), frame.rightCols(n - common) * oracle::random_basis(gen, n - common, extra);
        list.push_back(Subspace::from_orthonormal(q));
    }
    return list;
}

// Oracle for ||T^k - P_M||: explicit power of T, norm from BDCSVD.
double naive_error_norm(const IterOperator& op, int k)
{
    Matrix tk = Matrix::Identity(op.dim(), op.dim());
    for (int i = 0; i < k; ++i) {
        tk = op.matrix() * tk;
    }
    return oracle::bdc_norm(tk - op.limit_projector().matrix());
}

} // namespace

TEST(SimultaneousOperator, Examples)
{
    const std::vector<Subspace> axes{axis(2, 0), axis(2, 1)};
    const IterOperator t = simultaneous_operator(axes);
    EXPECT_LE((t.matrix() - 0.5 * Matrix::Identity(2, 2)).norm(), 1e-15);
    EXPECT_EQ(t.limit_projector().matrix(), Matrix::Zero(2, 2));
    EXPECT_EQ(t.kind(), IterKind::simultaneous);

    const std::vector<Subspace> full{Subspace::full(2), Subspace::full(2)};
    const IterOperator id = simultaneous_operator(full);
    EXPECT_LE((id.matrix() - Matrix::Identity(2, 2)).norm(), 1e-14);
    EXPECT_LE((id.limit_projector().matrix() - Matrix::Identity(2, 2)).norm(), 1e-14);

    const std::vector<Subspace> tri{line(0), line(120), line(240)};
    EXPECT_LE((simultaneous_operator(tri).matrix() - 0.5 * Matrix::Identity(2, 2)).norm(), 1e-15);
}

TEST(SimultaneousOperator, EmptyListRejected)
{
    EXPECT_THROW((void)simultaneous_operator(std::vector<Subspace>{}), InputError);
    EXPECT_THROW((void)cyclic_operator(std::vector<Subspace>{}), InputError);
}

TEST(CyclicOperator, Examples)
{
    const std::vector<Subspace> axes{axis(2, 0), axis(2, 1)};
    EXPECT_EQ(cyclic_operator(axes).matrix(), Matrix::Zero(2, 2));

    const Subspace s = Subspace::from_spanning(Matrix::Ones(3, 1));
    const std::vector<Subspace> one{s};
    EXPECT_LE((cyclic_operator(one).matrix() - projector(s).matrix()).norm(), 1e-15);

    const std::vector<Subspace> pair{line(0), line(60)};
    EXPECT_NEAR(spectral_norm(cyclic_operator(pair).matrix()), 0.5, 1e-15);
}

TEST(CyclicOperator, FirstSubspaceIsAppliedFirst)
{
    const std::vector<Subspace> pair{line(0), line(60)};
    const Matrix expected = projector(pair[1]).matrix() * projector(pair[0]).matrix();
    EXPECT_LE((cyclic_operator(pair).matrix() - expected).norm(), 1e-15);
}

TEST(Iterate, Examples)
{
    const std::vector<Subspace> axes{axis(2, 0), axis(2, 1)};
    const Vector x0 = Vector::Ones(2);
    const IterationTrace sim = iterate(simultaneous_operator(axes), x0, 4);
    ASSERT_EQ(sim.errors.size(), 5u);
    for (int k = 0; k <= 4; ++k) {
        EXPECT_NEAR(sim.errors[static_cast<std::size_t>(k)], std::sqrt(2.0) / std::pow(2.0, k), 1e-15);
    }

    const IterationTrace cyc = iterate(cyclic_operator(axes), x0, 3);
    EXPECT_NEAR(cyc.errors[0], std::sqrt(2.0), 1e-15);
    for (std::size_t k = 1; k < cyc.errors.size(); ++k) {
        EXPECT_EQ(cyc.errors[k], 0.0);
    }

    const std::vector<Subspace> planes{span_axes(3, {0, 1}), span_axes(3, {1, 2})};
    Vector in_m = Vector::Zero(3);
    in_m(1) = 2.0;
    for (double e : iterate(simultaneous_operator(planes), in_m, 5).errors) {
        EXPECT_LE(e, 1e-15);
    }
}

TEST(Iterate, Errors)
{
    const std::vector<Subspace> axes{axis(2, 0), axis(2, 1)};
    EXPECT_THROW((void)iterate(simultaneous_operator(axes), Vector::Ones(3), 2), InputError);
    EXPECT_THROW((void)iterate(simultaneous_operator(axes), Vector::Ones(2), -1), InputError);
}

TEST(ErrorOperatorNorm, Examples)
{
    const std::vector<Subspace> pair{line(0), line(60)};
    EXPECT_NEAR(error_operator_norm(simultaneous_operator(pair), 1), 0.75, 1e-14);
    EXPECT_NEAR(error_operator_norm(simultaneous_operator(pair), 3), 0.421875, 1e-14);
    EXPECT_NEAR(error_operator_norm(cyclic_operator(pair), 2), 0.125, 1e-14);
    EXPECT_THROW((void)error_operator_norm(cyclic_operator(pair), 0), InputError);
}

TEST(OptimalBound, Examples)
{
    const std::vector<Subspace> pair{line(0), line(60)};
    EXPECT_NEAR(optimal_bound_simultaneous(pair, 1), 0.75, 1e-14);
    const std::vector<Subspace> tri{line(0), line(120), line(240)};
    EXPECT_NEAR(optimal_bound_simultaneous(tri, 2), 0.25, 1e-14);
    const std::vector<Subspace> axes{axis(2, 0), axis(2, 1)};
    EXPECT_NEAR(optimal_bound_simultaneous(axes, 3), 0.125, 1e-15);
    const std::vector<Subspace> same{axis(2, 0), axis(2, 0)};
    EXPECT_EQ(optimal_bound_simultaneous(same, 1), 0.0);
}

TEST(KwBound, Examples)
{
    EXPECT_NEAR(kw_bound(line(0), line(60), 1), 0.5, 1e-15);
    EXPECT_NEAR(kw_bound(line(0), line(60), 2), 0.125, 1e-15);
    EXPECT_EQ(kw_bound(axis(2, 0), axis(2, 1), 5), 0.0);
}

TEST(CyclicBound, Examples)
{
    const std::vector<Subspace> pair{line(0), line(60)};
    EXPECT_NEAR(cyclic_bound(pair, 1), 0.5, 1e-15);
    const std::vector<Subspace> planes{span_axes(3, {0, 1}), span_axes(3, {1, 2})};
    EXPECT_NEAR(cyclic_bound(planes, 2), 0.0, 1e-15);
    const std::vector<Subspace> same{axis(3, 2), axis(3, 2), axis(3, 2)};
    EXPECT_EQ(cyclic_bound(same, 4), 0.0);
}

TEST(VerifyErrorIdentity, Examples)
{
    const std::vector<Subspace> pair{line(0), line(60)};
    EXPECT_EQ(verify_error_identity(simultaneous_operator(pair), 1), 0.0);
    EXPECT_LE(verify_error_identity(simultaneous_operator(pair), 4), 1e-10);
    const std::vector<Subspace> axes{axis(2, 0), axis(2, 1)};
    EXPECT_EQ(verify_error_identity(cyclic_operator(axes), 3), 0.0);
}

TEST(CompareMethods, Examples)
{
    auto c = compare_methods(line(0), line(60), 2);
    EXPECT_NEAR(c.cyclic, 0.125, 1e-15);
    EXPECT_NEAR(c.simultaneous, 0.5625, 1e-14);
    c = compare_methods(axis(2, 0), axis(2, 1), 2);
    EXPECT_EQ(c.cyclic, 0.0);
    EXPECT_NEAR(c.simultaneous, 0.25, 1e-15);
    c = compare_methods(line(0), line(60), 1);
    EXPECT_NEAR(c.cyclic, 0.5, 1e-15);
    EXPECT_NEAR(c.simultaneous, 0.75, 1e-14);
}

TEST(BoundFactors, StartAtOneAndFollowTheMethod)
{
    const std::vector<Subspace> pair{line(0), line(60)};
    const auto sim = bound_factors(IterKind::simultaneous, pair, 3);
    const auto cyc = bound_factors(IterKind::cyclic, pair, 3);
    ASSERT_EQ(sim.size(), 4u);
    EXPECT_EQ(sim[0], 1.0);
    EXPECT_EQ(cyc[0], 1.0);
    for (int k = 1; k <= 3; ++k) {
        EXPECT_NEAR(sim[static_cast<std::size_t>(k)], std::pow(0.75, k), 1e-14);
        EXPECT_NEAR(cyc[static_cast<std::size_t>(k)], std::pow(0.5, 2 * k - 1), 1e-14);
    }
}

TEST(ProjmethodsProperty, OperatorInvariants)
{
    std::mt19937_64 gen(79);
    for (int trial = 0; trial < 30; ++trial) {
        const auto list = random_family(gen, 2 + trial % 4, 8 + trial % 15);
        for (const auto& op : {simultaneous_operator(list), cyclic_operator(list)}) {
            const Matrix& t = op.matrix();
            const Matrix& pm = op.limit_projector().matrix();
            EXPECT_LE(spectral_norm(t), 1 + 1e-12);
            EXPECT_LE((t * pm - pm).norm(), 1e-10);
            EXPECT_LE((pm * t - pm).norm(), 1e-10);
            if (op.kind() == IterKind::simultaneous) {
                EXPECT_LE((t - t.transpose()).norm(), 1e-12);
            }
        }
    }
}

TEST(ProjmethodsProperty, SimultaneousNormIsPowerOfSingleStep)
{
    std::mt19937_64 gen(83);
    for (int trial = 0; trial < 20; ++trial) {
        const auto list = random_family(gen, 2 + trial % 4, 5 + trial % 25);
        const IterOperator t = simultaneous_operator(list);
        const double one = error_operator_norm(t, 1);
        for (int k = 1; k <= 20; ++k) {
            EXPECT_NEAR(error_operator_norm(t, k), std::pow(one, k), 1e-9);
            EXPECT_NEAR(error_operator_norm(t, k), optimal_bound_simultaneous(list, k), 1e-9);
        }
        EXPECT_NEAR(error_operator_norm(t, 3), naive_error_norm(t, 3), 1e-9);
    }
}

TEST(ProjmethodsProperty, KayalarWeinertAgainstOracle)
{
    std::mt19937_64 gen(89);
    for (int trial = 0; trial < 30; ++trial) {
        const Index n = 5 + trial % 25;
        const Index common = trial % 3;
        const auto pair = oracle::random_pair(gen, n, common + 1 + trial % 2, common + 2, common);
        const Subspace a = Subspace::from_orthonormal(pair.q1);
        const Subspace b = Subspace::from_orthonormal(pair.q2);
        const double c = oracle::friedrichs_two(pair.q1, pair.q2, common);
        const std::vector<Subspace> list{a, b};
        const IterOperator t = cyclic_operator(list);
        for (int k = 1; k <= 10; ++k) {
            const double expected = std::pow(c, 2 * k - 1);
            EXPECT_NEAR(error_operator_norm(t, k), expected, 1e-9);
            EXPECT_NEAR(kw_bound(a, b, k), expected, 1e-9);
        }
        EXPECT_NEAR(naive_error_norm(t, 2), std::pow(c, 3), 1e-9);
    }
}

TEST(ProjmethodsProperty, CyclicBoundHolds)
{
    std::mt19937_64 gen(97);
    for (int trial = 0; trial < 25; ++trial) {
        const int r = 2 + trial % 4;
        const auto list = random_family(gen, r, 6 + trial % 20);
        const IterOperator t = cyclic_operator(list);
        for (int k = 1; k <= 8; ++k) {
            EXPECT_LE(error_operator_norm(t, k), cyclic_bound(list, k) + 1e-9);
        }
        // For two subspaces the reduced product has norm cos, so k = 1 is exact.
        if (r == 2) {
            EXPECT_NEAR(error_operator_norm(t, 1), cyclic_bound(list, 1), 1e-9);
        }
    }
}

TEST(ProjmethodsProperty, PowerOfDeviationIdentity)
{
    std::mt19937_64 gen(101);
    for (int trial = 0; trial < 20; ++trial) {
        const auto list = random_family(gen, 2 + trial % 4, 5 + trial % 25);
        for (const auto& op : {simultaneous_operator(list), cyclic_operator(list)}) {
            for (int k = 1; k <= 20; ++k) {
                EXPECT_LE(verify_error_identity(op, k), 1e-9);
            }
        }
    }
}

TEST(ProjmethodsProperty, TrajectoryBoundsAndTightness)
{
    std::mt19937_64 gen(103);
    for (int trial = 0; trial < 20; ++trial) {
        const auto list = random_family(gen, 2 + trial % 4, 5 + trial % 25);
        const IterOperator t = simultaneous_operator(list);
        const int kmax = 10;
        for (int s = 0; s < 5; ++s) {
            Vector x0 = oracle::random_vector(gen, t.dim());
            x0.normalize();
            const IterationTrace tr = iterate(t, x0, kmax);
            for (int k = 1; k <= kmax; ++k) {
                const auto kk = static_cast<std::size_t>(k);
                EXPECT_LE(tr.errors[kk], optimal_bound_simultaneous(list, k) + 1e-10);
                EXPECT_LE(tr.errors[kk], tr.errors[kk - 1] + 1e-15);
            }
            EXPECT_LE(tr.max_violation(), 1e-10);
        }
        const Vector xs = adversarial_start(t);
        const IterationTrace adv = iterate(t, xs, kmax);
        for (int k = 1; k <= kmax; ++k) {
            EXPECT_GE(adv.errors[static_cast<std::size_t>(k)] / xs.norm(), optimal_bound_simultaneous(list, k) - 1e-8);
        }
    }
}

TEST(ProjmethodsProperty, CyclicIsFasterForPairs)
{
    std::mt19937_64 gen(107);
    for (int trial = 0; trial < 40; ++trial) {
        const Index n = 4 + trial % 20;
        const Index common = trial % 2;
        const auto pair = oracle::random_pair(gen, n, common + 1 + trial % 3, common + 1, common);
        const Subspace a = Subspace::from_orthonormal(pair.q1);
        const Subspace b = Subspace::from_orthonormal(pair.q2);
        const double c = cos_two(a, b).value;
        for (int k = 1; k <= 10; ++k) {
            const auto cmp = compare_methods(a, b, k);
            EXPECT_LE(cmp.cyclic, cmp.simultaneous + 1e-12);
            if (c <= 1 - 1e-6) {
                EXPECT_GE(cmp.simultaneous - cmp.cyclic, 1e-12);
            }
        }
    }
}
