#include "projopt/affine.hpp"
#include "projopt/errors.hpp"
#include "projopt/projmethods.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace projopt;

namespace {

Vector vec(std::initializer_list<double> xs)
{
    Vector v(static_cast<Index>(xs.size()));
    Index i = 0;
    for (double x : xs) {
        v(i++) = x;
    }
    return v;
}

AffineSubspace horizontal(double y)
{
    return AffineSubspace::from_point_span(vec({0, y}), oracle::axis(2, 0));
}

AffineSubspace vertical(double x)
{
    return AffineSubspace::from_point_span(vec({x, 0}), oracle::axis(2, 1));
}

// Random feasible family: a common point p plus random directions.
std::vector<AffineSubspace> random_affine(std::mt19937_64& gen, int r, Index n)
{
    const Vector p = oracle::random_vector(gen, n);
    const Index common = std::uniform_int_distribution<Index>(0, 1)(gen);
    const Matrix frame = oracle::random_basis(gen, n, n);
    std::vector<AffineSubspace> list;
    for (int i = 0; i < r; ++i) {
        const Index extra = std::uniform_int_distribution<Index>(1, std::max<Index>(1, (n - common) / r))(gen);
        Matrix q(n, common + extra);
        q << frame.leftCols(common), frame.rightCols(n - common) * oracle::random_basis(gen, n - common, extra);
        // Represent each V_i through a different point of it.
        const Vector point = p + q * oracle::random_vector(gen, q.cols());
        list.push_back(AffineSubspace::from_point_span(point, q));
    }
    return list;
}

} // namespace

TEST(AffineFromPointSpan, CanonicalAnchor)
{
    EXPECT_LE((horizontal(1).anchor() - vec({0, 1})).norm(), 1e-15);
    const AffineSubspace shifted = AffineSubspace::from_point_span(vec({3, 1}), oracle::axis(2, 0));
    EXPECT_LE((shifted.anchor() - vec({0, 1})).norm(), 1e-15);
    const AffineSubspace linear = AffineSubspace::from_point_span(Vector::Zero(3), Matrix::Ones(3, 1));
    EXPECT_EQ(linear.anchor().norm(), 0.0);
    EXPECT_THROW((void)AffineSubspace::from_point_span(vec({1, 2, 3}), oracle::axis(2, 0)), InputError);
}

TEST(ProjectAffine, Examples)
{
    EXPECT_LE((project_affine(horizontal(1), vec({3, 5})) - vec({3, 1})).norm(), 1e-15);
    EXPECT_LE((project_affine(horizontal(1), vec({-2, 1})) - vec({-2, 1})).norm(), 1e-15);
    const AffineSubspace point = AffineSubspace::from_point_span(vec({4, -1}), Matrix(2, 0));
    EXPECT_LE((project_affine(point, vec({9, 9})) - vec({4, -1})).norm(), 1e-15);
    EXPECT_THROW((void)project_affine(point, vec({1})), InputError);
}

TEST(IntersectionAffine, Examples)
{
    const std::vector<AffineSubspace> cross{horizontal(1), vertical(2)};
    const AffineSubspace v = intersection_affine(cross);
    EXPECT_EQ(v.direction().dim(), 0);
    EXPECT_LE((v.anchor() - vec({2, 1})).norm(), 1e-14);

    const std::vector<AffineSubspace> parallel{horizontal(0), horizontal(1)};
    EXPECT_THROW((void)intersection_affine(parallel), InfeasibleError);

    const std::vector<AffineSubspace> twice{horizontal(3), horizontal(3)};
    const AffineSubspace w = intersection_affine(twice);
    EXPECT_EQ(w.direction().dim(), 1);
    EXPECT_LE((w.anchor() - vec({0, 3})).norm(), 1e-14);
}

TEST(SimultaneousAffine, PerpendicularLines)
{
    const std::vector<AffineSubspace> cross{horizontal(1), vertical(2)};
    const IterationTrace tr = simultaneous_affine(cross, vec({0, 0}), 3);
    EXPECT_NEAR(tr.errors[1], std::sqrt(1.25), 1e-14);
    EXPECT_NEAR(tr.bounds[1], 0.5 * std::sqrt(5.0), 1e-14);
    EXPECT_NEAR(tr.errors[1], tr.bounds[1], 1e-8);
    EXPECT_LE(tr.max_violation(), 1e-10);
}

TEST(SimultaneousAffine, FixedPointsAndEqualSets)
{
    const std::vector<AffineSubspace> cross{horizontal(1), vertical(2)};
    for (double e : simultaneous_affine(cross, vec({2, 1}), 4).errors) {
        EXPECT_LE(e, 1e-15);
    }
    const std::vector<AffineSubspace> same{horizontal(1), horizontal(1), horizontal(1)};
    const IterationTrace tr = simultaneous_affine(same, vec({5, -3}), 4);
    EXPECT_GT(tr.errors[0], 0.0);
    for (std::size_t k = 1; k < tr.errors.size(); ++k) {
        EXPECT_LE(tr.errors[k], 1e-14);
    }
}

TEST(SimultaneousAffine, InfeasibleRejected)
{
    const std::vector<AffineSubspace> parallel{horizontal(0), horizontal(1)};
    EXPECT_THROW((void)simultaneous_affine(parallel, vec({0, 0}), 2), InfeasibleError);
    EXPECT_THROW((void)cyclic_affine(parallel, vec({0, 0}), 2), InfeasibleError);
}

TEST(CyclicAffine, Examples)
{
    const std::vector<AffineSubspace> cross{horizontal(1), vertical(2)};
    const IterationTrace tr = cyclic_affine(cross, vec({0, 0}), 3);
    EXPECT_NEAR(tr.errors[0], std::sqrt(5.0), 1e-14);
    EXPECT_LE(tr.errors[1], 1e-15);
    for (double e : cyclic_affine(cross, vec({2, 1}), 3).errors) {
        EXPECT_LE(e, 1e-15);
    }

    // Lines through the origin at 60 degrees: the bound is cos^(2k-1).
    const std::vector<AffineSubspace> lines{AffineSubspace::from_point_span(Vector::Zero(2), oracle::line(0)),
                                            AffineSubspace::from_point_span(Vector::Zero(2), oracle::line(oracle::kPi / 3))};
    const Vector x0 = vec({0.3, -1.2});
    const IterationTrace lt = cyclic_affine(lines, x0, 5);
    for (int k = 1; k <= 5; ++k) {
        EXPECT_NEAR(lt.bounds[static_cast<std::size_t>(k)], std::pow(0.5, 2 * k - 1) * x0.norm(), 1e-14);
    }
}

TEST(AffineProperty, TranslationConsistency)
{
    std::mt19937_64 gen(149);
    for (int trial = 0; trial < 25; ++trial) {
        const Index n = 3 + trial % 15;
        const auto list = random_affine(gen, 2 + trial % 4, n);
        const AffineSubspace v = intersection_affine(list);
        const Vector x0 = oracle::random_vector(gen, n) * 3.0;
        const auto dirs = directions(list);
        for (bool cyclic : {false, true}) {
            const IterationTrace aff = cyclic ? cyclic_affine(list, x0, 10) : simultaneous_affine(list, x0, 10);
            const IterOperator op = cyclic ? cyclic_operator(dirs) : simultaneous_operator(dirs);
            const IterationTrace lin = iterate(op, x0 - v.anchor(), 10);
            for (std::size_t k = 0; k < aff.errors.size(); ++k) {
                EXPECT_NEAR(aff.errors[k], lin.errors[k], 1e-10) << "trial " << trial << " k " << k;
            }
            EXPECT_LE(aff.max_violation(), 1e-10 * std::max(1.0, x0.norm()));
        }
    }
}

TEST(AffineProperty, ProjectionOptimalityAndCanonicalAnchor)
{
    std::mt19937_64 gen(151);
    for (int trial = 0; trial < 25; ++trial) {
        const Index n = 2 + trial % 10;
        const Matrix span = oracle::random_basis(gen, n, 1 + trial % n);
        const AffineSubspace v = AffineSubspace::from_point_span(oracle::random_vector(gen, n), span);
        EXPECT_LE((span.transpose() * v.anchor()).norm(), 1e-10);
        EXPECT_TRUE(v.contains(v.anchor()));
        const Vector x = oracle::random_vector(gen, n);
        const Vector px = project_affine(v, x);
        EXPECT_TRUE(v.contains(px));
        for (int j = 0; j < 10; ++j) {
            const Vector y = v.anchor() + span * oracle::random_vector(gen, span.cols());
            EXPECT_LE((x - px).norm(), (x - y).norm() + 1e-10);
        }
    }
}

TEST(AffineProperty, AdversarialStartAttainsBound)
{
    std::mt19937_64 gen(157);
    for (int trial = 0; trial < 15; ++trial) {
        const Index n = 3 + trial % 12;
        const auto list = random_affine(gen, 2 + trial % 4, n);
        const AffineSubspace v = intersection_affine(list);
        const Vector xs = adversarial_start(simultaneous_operator(directions(list)));
        const IterationTrace tr = simultaneous_affine(list, v.anchor() + xs, 10);
        for (std::size_t k = 0; k < tr.errors.size(); ++k) {
            EXPECT_GE(tr.errors[k], tr.bounds[k] - 1e-8);
            EXPECT_LE(tr.errors[k], tr.bounds[k] + 1e-10);
        }
    }
}
