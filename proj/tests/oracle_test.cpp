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

#include "tlsline/oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "test_support.hpp"
#include "tlsline/fit.hpp"

namespace tlsline {
namespace {

using testing::Rng;

TEST(GridSearch, CollinearTwoDimensional) {
  // Points along 37 degrees, which is not a grid angle.
  const double a = 37.3 * std::numbers::pi / 180.0;
  std::vector<Vector> pts;
  for (int k = -5; k <= 5; ++k) pts.push_back({k * std::cos(a) + 1.0, k * std::sin(a) - 2.0});
  const PointSet ps(pts);
  const auto grid = oracle::grid_search_direction(ps, 1.0);
  EXPECT_LE(testing::line_angle_deg(grid.best_direction, {std::cos(a), std::sin(a)}), 1.0);
  EXPECT_EQ(grid.evaluated, 180u);
  const LineFitResult fit = fit_tls_line(ps);
  EXPECT_LE(fit.total_sq_distance, grid.best_D);
}

TEST(GridSearch, IsotropicCross) {
  const auto grid =
      oracle::grid_search_direction(PointSet({{1, 0}, {0, 1}, {-1, 0}, {0, -1}}), 1.0);
  EXPECT_NEAR(grid.best_D, 2.0, 1e-12);
  EXPECT_NEAR(vec::norm(grid.best_direction), 1.0, 1e-12);
}

TEST(GridSearch, MatchesFitOnSeed42Cloud) {
  const PointSet ps = testing::seed42_cloud();
  const auto grid = oracle::grid_search_direction(ps, 0.25);
  const LineFitResult fit = fit_tls_line(ps);
  EXPECT_LE(testing::rel_diff(grid.best_D, fit.total_sq_distance), 1e-4);
  EXPECT_LE(fit.total_sq_distance, grid.best_D);
  EXPECT_EQ(grid.resolution_deg, 0.25);
}

TEST(GridSearch, HemisphereCount) {
  const auto grid = oracle::grid_search_direction(testing::seed42_cloud(), 10.0);
  // Pole plus 9 polar rings of 36 azimuths.
  EXPECT_EQ(grid.evaluated, 1u + 9u * 36u);
}

TEST(GridSearch, RejectsUnsupportedInput) {
  const PointSet four_d = testing::uniform_cloud(10, 4, 1);
  try {
    oracle::grid_search_direction(four_d, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnsupportedDimension);
  }
  EXPECT_THROW(oracle::grid_search_direction(testing::seed42_cloud(), 0.0), Error);
  EXPECT_THROW(oracle::grid_search_direction(testing::seed42_cloud(), 10.5), Error);
}

TEST(CubicEigenvalues, Diagonal) {
  const auto ev = oracle::cubic_eigenvalues(Matrix::diagonal(Vector{3, 2, 1}));
  EXPECT_EQ(ev[0], 3.0);
  EXPECT_EQ(ev[1], 2.0);
  EXPECT_EQ(ev[2], 1.0);
}

TEST(CubicEigenvalues, Identity) {
  const auto ev = oracle::cubic_eigenvalues(Matrix::identity(3));
  for (double v : ev) EXPECT_EQ(v, 1.0);
}

TEST(CubicEigenvalues, MatchesJacobiOnSeed42Scatter) {
  const ScatterSummary s = accumulate_scatter(center(testing::seed42_cloud()).first);
  const auto ev = oracle::cubic_eigenvalues(s.omega);
  const auto jac = jacobi_eigen(s.omega);
  for (std::size_t k = 0; k < 3; ++k)
    EXPECT_LE(std::abs(ev[k] - jac.values[k]) / std::abs(jac.values[k]), 1e-9);
}

TEST(CubicEigenvalues, TraceAndDeterminant) {
  Rng rng(55);
  for (int trial = 0; trial < 200; ++trial) {
    const Matrix m = testing::random_psd(rng, 3);
    const auto ev = oracle::cubic_eigenvalues(m);
    const double det = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                       m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                       m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    EXPECT_LE(testing::rel_diff(ev[0] + ev[1] + ev[2], m.trace()), 1e-9);
    EXPECT_LE(std::abs(ev[0] * ev[1] * ev[2] - det), 1e-9 * std::pow(m.trace(), 3));
    EXPECT_GE(ev[0], ev[1]);
    EXPECT_GE(ev[1], ev[2]);
  }
}

TEST(CubicEigenvalues, RejectsBadInput) {
  Matrix m = Matrix::identity(3);
  m(2, 0) = 1.0;
  EXPECT_THROW(oracle::cubic_eigenvalues(m), Error);
  EXPECT_THROW(oracle::cubic_eigenvalues(Matrix::identity(2)), Error);
}

TEST(QuadraticEigenvalues, KnownMatrix) {
  Matrix m(2, 2);
  m(0, 0) = 2;
  m(1, 1) = 2;
  m(0, 1) = 1;
  m(1, 0) = 1;
  const auto ev = oracle::quadratic_eigenvalues(m);
  EXPECT_DOUBLE_EQ(ev[0], 3.0);
  EXPECT_DOUBLE_EQ(ev[1], 1.0);
}

}  // namespace
}  // namespace tlsline
