// Copyright 2026 The tlsline Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tlsline/geometry.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "test_support.hpp"

namespace tlsline {
namespace {

using testing::Rng;

TEST(PointSet, RejectsTooFewPoints) {
  EXPECT_THROW(PointSet({{1.0, 2.0}}), Error);
  EXPECT_THROW(PointSet(std::vector<Vector>{}), Error);
}

TEST(PointSet, RejectsLowDimension) {
  EXPECT_THROW(PointSet({{1.0}, {2.0}}), Error);
}

TEST(PointSet, RejectsMixedDimensions) {
  try {
    PointSet({{1.0, 2.0}, {1.0, 2.0, 3.0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}

TEST(PointSet, RejectsNonFinite) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_THROW(PointSet({{0.0, 0.0}, {nan, 1.0}}), Error);
  EXPECT_THROW(PointSet({{0.0, inf}, {0.0, 1.0}}), Error);
}

TEST(Centroid, Midpoint) {
  const PointSet ps({{0, 0, 0}, {2, 2, 2}});
  EXPECT_EQ(centroid(ps).value, (Vector{1, 1, 1}));
}

TEST(Centroid, SymmetricCross) {
  const PointSet ps({{1, 0}, {0, 1}, {-1, 0}, {0, -1}});
  EXPECT_EQ(centroid(ps).value, (Vector{0, 0}));
}

TEST(Centroid, MatchesIndependentAccumulation) {
  const PointSet ps = testing::seed42_cloud();
  // Column-wise pairwise summation, a different order than the library's
  // row-major running sum.
  Vector expected(3);
  for (std::size_t i = 0; i < 3; ++i) {
    std::vector<double> col;
    for (const auto& p : ps) col.push_back(p[i]);
    while (col.size() > 1) {
      std::vector<double> next;
      for (std::size_t k = 0; k + 1 < col.size(); k += 2)
        next.push_back(col[k] + col[k + 1]);
      if (col.size() % 2) next.push_back(col.back());
      col = std::move(next);
    }
    expected[i] = col[0] / 50.0;
  }
  const Centroid c = centroid(ps);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(c.value[i], expected[i], 1e-12);
}

TEST(Center, ShiftsToZeroMean) {
  const auto [shifted, c] = center(PointSet({{1, 1}, {3, 3}}));
  EXPECT_EQ(c.value, (Vector{2, 2}));
  EXPECT_EQ(shifted[0], (Vector{-1, -1}));
  EXPECT_EQ(shifted[1], (Vector{1, 1}));
}

TEST(Center, AlreadyCenteredIsIdentity) {
  const PointSet ps({{1, 0}, {0, 1}, {-1, 0}, {0, -1}});
  const auto [shifted, c] = center(ps);
  EXPECT_EQ(c.value, (Vector{0, 0}));
  EXPECT_EQ(shifted.points(), ps.points());
}

TEST(Center, RoundTripRestoresInput) {
  const PointSet ps = testing::seed42_cloud();
  const auto [shifted, c] = center(ps);
  const Centroid zero = centroid(shifted);
  for (double v : zero.value) EXPECT_NEAR(v, 0.0, 1e-12);
  for (std::size_t p = 0; p < ps.size(); ++p) {
    const Vector back = vec::add(shifted[p], c.value);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(back[i], ps[p][i], 1e-12);
  }
}

TEST(ParametricLine, NormalizesAndCanonicalizes) {
  const ParametricLine line({0, 0, 0}, {-2, 0, 0});
  EXPECT_EQ(line.direction(), (Vector{1, 0, 0}));
  EXPECT_THROW(ParametricLine({0, 0}, {0, 0}), Error);
  EXPECT_THROW(ParametricLine({0, 0}, {1, 0, 0}), Error);
}

TEST(ParametricLine, SignIsCanonicalForBothOrientations) {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const Vector s = testing::random_unit(rng, 4);
    const Vector a = canonicalize_sign(s);
    const Vector b = canonicalize_sign(vec::scale(s, -1.0));
    EXPECT_EQ(a, b);
  }
  // Leading near-zero components are skipped.
  EXPECT_EQ(canonicalize_sign({1e-14, -1.0}), (Vector{-1e-14, 1.0}));
}

TEST(Distance, UnitOffset) {
  const ParametricLine line({0, 0, 0}, {1, 0, 0});
  EXPECT_DOUBLE_EQ(point_line_distance_sq(Vector{0, 1, 0}, line), 1.0);
}

TEST(Distance, PointOnLine) {
  const ParametricLine line({0.3, -1.2, 2.0}, {1, 2, 2});
  const Vector x = vec::axpy(line.anchor(), 3.7, line.direction());
  EXPECT_LE(point_line_distance_sq(x, line),
            1e-12 * vec::norm_sq(vec::sub(x, line.anchor())));
}

TEST(Distance, MatchesCrossProductForm) {
  const ParametricLine line({0, 0, 0}, {1, 0, 0});
  const Vector x{1, 2, 2};
  const Vector c = testing::cross3(line.direction(), x);
  const double cross_form = vec::norm_sq(c) / vec::norm_sq(line.direction());
  EXPECT_DOUBLE_EQ(cross_form, 8.0);
  EXPECT_DOUBLE_EQ(point_line_distance_sq(x, line), 8.0);
}

TEST(Distance, DimensionMismatch) {
  const ParametricLine line({0, 0, 0}, {1, 0, 0});
  EXPECT_THROW(point_line_distance_sq(Vector{1, 2}, line), Error);
}

TEST(DistanceProperty, ProjectionEqualsCrossProductIn3D) {
  Rng rng(101);
  for (int trial = 0; trial < 500; ++trial) {
    const Vector anchor = testing::gaussian_vector(rng, 3, 5.0);
    const Vector s = testing::random_unit(rng, 3);
    const Vector x = testing::gaussian_vector(rng, 3, 5.0);
    const ParametricLine line(anchor, s);
    const Vector c = testing::cross3(line.direction(), vec::sub(x, anchor));
    const double expected = vec::norm_sq(c);
    EXPECT_LE(testing::rel_diff(point_line_distance_sq(x, line), expected), 1e-10);
  }
}

TEST(DistanceProperty, InvariantUnderRigidMotion) {
  Rng rng(202);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = 2 + trial % 5;
    const Vector anchor = testing::gaussian_vector(rng, d);
    const Vector s = testing::random_unit(rng, d);
    const Vector x = testing::gaussian_vector(rng, d, 3.0);
    const Matrix q = testing::random_orthogonal(rng, d);
    const Vector t = testing::gaussian_vector(rng, d, 10.0);

    const double base = point_line_distance_sq(x, ParametricLine(anchor, s));
    const double translated = point_line_distance_sq(
        vec::add(x, t), ParametricLine(vec::add(anchor, t), s));
    const double rotated =
        point_line_distance_sq(q * x, ParametricLine(q * anchor, q * s));
    EXPECT_LE(testing::rel_diff(base, translated, 1e-12), 1e-10);
    EXPECT_LE(testing::rel_diff(base, rotated, 1e-12), 1e-10);
  }
}

}  // namespace
}  // namespace tlsline
