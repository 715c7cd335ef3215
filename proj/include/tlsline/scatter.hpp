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

// Scatter quantities of a centered point set:
//
//   xi    = sum_p x_p^T x_p
//   Omega = sum_p x_p x_p^T
//   R     = xi I - Omega = sum_p (x_p^T x_p I - x_p x_p^T)
//
// For a unit direction s the total squared orthogonal distance of the
// points to the line through the origin along s is s^T R s = xi - s^T Omega s.

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>

#include "tlsline/error.hpp"
#include "tlsline/geometry.hpp"
#include "tlsline/linalg.hpp"

namespace tlsline {

/// 3x3 matrix T with T s = a x s for every s.
class SkewCrossMatrix {
 public:
  explicit SkewCrossMatrix(std::span<const double> a) : m_(3, 3) {
    if (a.size() != 3) {
      throw Error(ErrorCode::DimensionMismatch,
                  "cross matrix needs a 3-vector, got dimension " +
                      std::to_string(a.size()));
    }
    m_(0, 1) = -a[2];
    m_(0, 2) = a[1];
    m_(1, 0) = a[2];
    m_(1, 2) = -a[0];
    m_(2, 0) = -a[1];
    m_(2, 1) = a[0];
  }

  const Matrix& matrix() const& noexcept { return m_; }
  Matrix matrix() && { return std::move(m_); }
  Vector apply(std::span<const double> s) const { return m_ * s; }

 private:
  Matrix m_;
};

inline SkewCrossMatrix cross_matrix(std::span<const double> a) {
  return SkewCrossMatrix(a);
}

/// M_p = (x^T x) I - x x^T. In 3D this equals Q^T Q for Q = cross_matrix(x).
inline Matrix mp_matrix(std::span<const double> x) {
  const double len_sq = vec::norm_sq(x);
  Matrix m = Matrix::outer(x, x);
  m *= -1.0;
  for (std::size_t i = 0; i < x.size(); ++i) m(i, i) += len_sq;
  return m;
}

struct ScatterSummary {
  double xi = 0.0;
  Matrix omega;
  Matrix r;
  std::size_t n_points = 0;

  std::size_t dim() const noexcept { return omega.rows(); }
};

/// Relative tolerance on the centroid of the input to accumulate_scatter.
inline constexpr double kCenteredTolerance = 1e-6;

namespace detail {

/// Partial sums over a range of points, in input order.
inline void accumulate_moments(std::span<const Vector> points, double& xi,
                               Matrix& omega) {
  const std::size_t d = omega.rows();
  for (const auto& x : points) {
    for (std::size_t i = 0; i < d; ++i) {
      xi += x[i] * x[i];
      for (std::size_t j = i; j < d; ++j) omega(i, j) += x[i] * x[j];
    }
  }
}

}  // namespace detail

/// Builds xi, Omega and R from a set whose centroid is already at the
/// origin. Sets that are not centered are rejected rather than re-centered.
inline ScatterSummary accumulate_scatter(const PointSet& centered) {
  const std::size_t d = centered.dim();
  const Centroid c = centroid(centered);
  const double scale = centered.coordinate_scale();
  if (vec::max_abs(c.value) > kCenteredTolerance * scale) {
    throw Error(ErrorCode::NotCentered,
                "centroid offset " + std::to_string(vec::max_abs(c.value)) +
                    " exceeds tolerance for coordinate scale " +
                    std::to_string(scale));
  }

  ScatterSummary s;
  s.n_points = centered.size();
  s.omega = Matrix(d, d);
  detail::accumulate_moments(centered.points(), s.xi, s.omega);
  if (!(s.xi > 0.0)) {
    throw Error(ErrorCode::DegenerateInput, "all points at the origin");
  }
  // Only the upper triangle was accumulated; mirroring it makes Omega
  // exactly symmetric.
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) s.omega(j, i) = s.omega(i, j);

  s.r = Matrix::identity(d) * s.xi;
  s.r -= s.omega;
  return s;
}

}  // namespace tlsline
