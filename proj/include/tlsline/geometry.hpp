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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tlsline/error.hpp"
#include "tlsline/linalg.hpp"

namespace tlsline {

/// Components with magnitude at or below this are skipped when choosing
/// the sign of a direction.
inline constexpr double kSignEpsilon = 1e-12;

/// An ordered set of n >= 2 finite points sharing one dimension d >= 2.
class PointSet {
 public:
  PointSet() = default;

  explicit PointSet(std::vector<Vector> points) : points_(std::move(points)) {
    if (points_.size() < 2) {
      throw Error(ErrorCode::InvalidInput,
                  "need at least 2 points, got " +
                      std::to_string(points_.size()));
    }
    dim_ = points_.front().size();
    if (dim_ < 2) {
      throw Error(ErrorCode::InvalidInput,
                  "need dimension >= 2, got " + std::to_string(dim_));
    }
    for (std::size_t p = 0; p < points_.size(); ++p) {
      if (points_[p].size() != dim_) {
        throw Error(ErrorCode::DimensionMismatch,
                    "point " + std::to_string(p) + " has dimension " +
                        std::to_string(points_[p].size()) + ", expected " +
                        std::to_string(dim_));
      }
      if (!vec::all_finite(points_[p])) {
        throw Error(ErrorCode::InvalidInput,
                    "point " + std::to_string(p) + " is not finite");
      }
    }
  }

  std::size_t size() const noexcept { return points_.size(); }
  std::size_t dim() const noexcept { return dim_; }

  const Vector& operator[](std::size_t i) const { return points_[i]; }
  auto begin() const noexcept { return points_.begin(); }
  auto end() const noexcept { return points_.end(); }
  const std::vector<Vector>& points() const noexcept { return points_; }

  /// Largest absolute coordinate, used as the magnitude scale in tolerances.
  double coordinate_scale() const {
    double m = 0.0;
    for (const auto& p : points_) m = std::max(m, vec::max_abs(p));
    return m;
  }

 private:
  std::vector<Vector> points_;
  std::size_t dim_ = 0;
};

struct Centroid {
  Vector value;
};

/// Flips `v` so that its first component with |v_i| > kSignEpsilon is
/// positive. v and -v map to the same result.
inline Vector canonicalize_sign(Vector v) {
  for (double c : v) {
    if (std::abs(c) > kSignEpsilon) {
      if (c < 0.0) {
        for (double& x : v) x = -x;
      }
      break;
    }
  }
  return v;
}

/// A line { anchor + t * direction }, direction unit length and sign
/// canonical.
class ParametricLine {
 public:
  ParametricLine(Vector anchor, const Vector& direction)
      : anchor_(std::move(anchor)) {
    vec::require_same_dim(anchor_, direction);
    if (!vec::all_finite(anchor_) || !vec::all_finite(direction)) {
      throw Error(ErrorCode::InvalidInput, "line must be finite");
    }
    direction_ = canonicalize_sign(vec::normalized(direction));
  }

  const Vector& anchor() const noexcept { return anchor_; }
  const Vector& direction() const noexcept { return direction_; }
  std::size_t dim() const noexcept { return anchor_.size(); }

 private:
  Vector anchor_;
  Vector direction_;
};

/// Arithmetic mean, accumulated in input order.
inline Centroid centroid(const PointSet& ps) {
  Vector sum(ps.dim(), 0.0);
  for (const auto& p : ps) {
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += p[i];
  }
  const double inv_n = 1.0 / static_cast<double>(ps.size());
  for (double& v : sum) v *= inv_n;
  return Centroid{std::move(sum)};
}

/// Shifts the set so its mean sits at the origin. Returns the shifted set
/// together with the centroid that was removed.
inline std::pair<PointSet, Centroid> center(const PointSet& ps) {
  Centroid c = centroid(ps);
  std::vector<Vector> shifted;
  shifted.reserve(ps.size());
  for (const auto& p : ps) shifted.push_back(vec::sub(p, c.value));
  return {PointSet(std::move(shifted)), std::move(c)};
}

/// Squared orthogonal distance from x to the line. Evaluated as the squared
/// norm of the rejection v - (v.s)s with v = x - anchor, which equals
/// |v|^2 - (v.s)^2 but keeps full relative accuracy for points close to the
/// line.
inline double point_line_distance_sq(std::span<const double> x,
                                     const ParametricLine& line) {
  vec::require_same_dim(x, line.anchor());
  const Vector v = vec::sub(x, line.anchor());
  const double along = vec::dot(v, line.direction());
  double d2 = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double r = v[i] - along * line.direction()[i];
    d2 += r * r;
  }
  return d2;
}

}  // namespace tlsline
