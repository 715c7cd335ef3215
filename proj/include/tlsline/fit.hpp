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

#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tlsline/error.hpp"
#include "tlsline/geometry.hpp"
#include "tlsline/linalg.hpp"
#include "tlsline/scatter.hpp"
#include "tlsline/solver.hpp"

namespace tlsline {

struct LineFitResult {
  ParametricLine line;
  /// Sum of per_point_sq.
  double total_sq_distance = 0.0;
  std::vector<double> per_point_sq;
  EigenSolution eigen;
  std::size_t n_points = 0;
  /// Trace of the scatter matrix; total_sq_distance == xi - eigen.rayleigh.
  double xi = 0.0;
};

/// y = coefficients . x + offset, where y is coordinate `dependent_col` and
/// x the remaining coordinates in their original order.
struct ExplicitFitResult {
  Vector coefficients;
  double offset = 0.0;
  double residual_sq = 0.0;
  std::size_t dependent_col = 0;
};

/// Sum of squared orthogonal distances of the points to the line.
inline double total_orthogonal_distance(const PointSet& ps,
                                        const ParametricLine& line) {
  if (ps.dim() != line.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "point set and line dimension");
  }
  double total = 0.0;
  for (const auto& p : ps) total += point_line_distance_sq(p, line);
  return total;
}

/// Line minimizing the total squared orthogonal distance: it passes through
/// the centroid along the dominant eigenvector of the centered scatter
/// matrix.
inline LineFitResult fit_tls_line(const PointSet& ps,
                                  const SolverConfig& cfg = {}) {
  bool all_equal = true;
  for (const auto& p : ps) all_equal = all_equal && p == ps[0];
  if (all_equal) {
    throw Error(ErrorCode::DegenerateInput,
                "all points coincide; every line through them is optimal");
  }

  auto [centered, c] = center(ps);
  const ScatterSummary summary = accumulate_scatter(centered);
  EigenSolution eigen = dominant_eigenpair(summary.omega, cfg);

  ParametricLine line(std::move(c.value), eigen.direction);
  std::vector<double> per_point;
  per_point.reserve(ps.size());
  double total = 0.0;
  for (const auto& p : ps) {
    per_point.push_back(point_line_distance_sq(p, line));
    total += per_point.back();
  }
  return LineFitResult{std::move(line), total,        std::move(per_point),
                       std::move(eigen), ps.size(), summary.xi};
}

/// Pivots smaller than this times the row scale count as zero.
inline constexpr double kPivotTolerance = 1e-12;

namespace detail {

/// Solves a x = b by Gaussian elimination with partial pivoting. A zero
/// pivot (relative to the original scale of its row) raises RankDeficient.
inline Vector solve_partial_pivot(Matrix a, Vector b) {
  const std::size_t n = a.rows();
  std::vector<double> row_scale(n);
  for (std::size_t i = 0; i < n; ++i) row_scale[i] = vec::max_abs(a.row(i));

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      std::swap(b[k], b[piv]);
      std::swap(row_scale[k], row_scale[piv]);
    }
    if (!(std::abs(a(k, k)) > kPivotTolerance * row_scale[k])) {
      throw Error(ErrorCode::RankDeficient,
                  "zero pivot in column " + std::to_string(k));
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a(i, k) / a(k, k);
      if (f == 0.0) continue;
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      b[i] -= f * b[k];
    }
  }
  Vector x(n);
  for (std::size_t k = n; k-- > 0;) {
    double acc = b[k];
    for (std::size_t j = k + 1; j < n; ++j) acc -= a(k, j) * x[j];
    x[k] = acc / a(k, k);
  }
  return x;
}

/// The d - 1 independent coordinates of p followed by a constant 1.
inline Vector design_row(std::span<const double> p, std::size_t dependent_col) {
  Vector row;
  row.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    if (i != dependent_col) row.push_back(p[i]);
  row.push_back(1.0);
  return row;
}

}  // namespace detail

/// Classical regression of one coordinate on the others, minimizing the
/// squared vertical residuals via the normal equations A^T A b = A^T y.
inline ExplicitFitResult fit_lse_explicit(
    const PointSet& ps, std::optional<std::size_t> dependent_col = {}) {
  const std::size_t d = ps.dim();
  const std::size_t dep = dependent_col.value_or(d - 1);
  if (dep >= d) {
    throw Error(ErrorCode::InvalidInput,
                "dependent column " + std::to_string(dep) +
                    " out of range for dimension " + std::to_string(d));
  }
  if (ps.size() < d) {
    throw Error(ErrorCode::InvalidInput,
                "need at least " + std::to_string(d) + " points, got " +
                    std::to_string(ps.size()));
  }

  Matrix normal(d, d);
  Vector rhs(d, 0.0);
  for (const auto& p : ps) {
    const Vector row = detail::design_row(p, dep);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) normal(i, j) += row[i] * row[j];
      rhs[i] += row[i] * p[dep];
    }
  }
  const Vector beta = detail::solve_partial_pivot(normal, rhs);

  ExplicitFitResult out;
  out.coefficients.assign(beta.begin(), beta.end() - 1);
  out.offset = beta.back();
  out.dependent_col = dep;
  for (const auto& p : ps) {
    const Vector row = detail::design_row(p, dep);
    const double r = p[dep] - vec::dot(row, beta);
    out.residual_sq += r * r;
  }
  return out;
}

/// Value of the explicit model at point p (p's own dependent coordinate is
/// ignored).
inline double predict(const ExplicitFitResult& fit, std::span<const double> p) {
  const Vector row = detail::design_row(p, fit.dependent_col);
  double y = fit.offset;
  for (std::size_t i = 0; i < fit.coefficients.size(); ++i)
    y += fit.coefficients[i] * row[i];
  return y;
}

/// Parametric line read off an explicit fit so both fits can be scored by
/// orthogonal distance. The anchor is the model point above the mean of the
/// independent coordinates. The direction is the steepest-ascent direction
/// within the model hyperplane, (c, |c|^2); in 2D this is (1, slope). A flat
/// model falls back to the first independent axis.
inline ParametricLine lse_induced_line(const PointSet& ps,
                                       const ExplicitFitResult& fit) {
  const std::size_t d = ps.dim();
  const std::size_t dep = fit.dependent_col;
  Vector anchor = centroid(ps).value;
  anchor[dep] = predict(fit, anchor);

  Vector direction(d, 0.0);
  const double slope_sq = vec::norm_sq(fit.coefficients);
  std::size_t k = 0;
  for (std::size_t i = 0; i < d; ++i) {
    if (i == dep) continue;
    direction[i] = slope_sq > 0.0 ? fit.coefficients[k] : (k == 0 ? 1.0 : 0.0);
    ++k;
  }
  direction[dep] = slope_sq;
  return ParametricLine(std::move(anchor), direction);
}

/// Sum of squared vertical residuals of a 2D line, treating coordinate
/// `dependent_col` as y. Empty for d != 2 or a vertical line.
inline std::optional<double> vertical_residual_sq(const PointSet& ps,
                                                  const ParametricLine& line,
                                                  std::size_t dependent_col) {
  if (ps.dim() != 2 || dependent_col > 1) return std::nullopt;
  const std::size_t ix = 1 - dependent_col;
  const double sx = line.direction()[ix];
  if (std::abs(sx) <= kSignEpsilon) return std::nullopt;
  const double slope = line.direction()[dependent_col] / sx;
  double total = 0.0;
  for (const auto& p : ps) {
    const double y = line.anchor()[dependent_col] +
                     slope * (p[ix] - line.anchor()[ix]);
    const double r = p[dependent_col] - y;
    total += r * r;
  }
  return total;
}

}  // namespace tlsline
