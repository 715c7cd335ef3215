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

// Brute-force references for cross-checking the solver. Nothing in the fit
// pipeline calls into this header.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <string>

#include "tlsline/error.hpp"
#include "tlsline/geometry.hpp"
#include "tlsline/linalg.hpp"

namespace tlsline::oracle {

struct GridSearchResult {
  Vector best_direction;
  double best_D = 0.0;
  double resolution_deg = 0.0;
  std::size_t evaluated = 0;
};

namespace detail {

/// Second moments about the mean, computed here rather than through the
/// scatter module so the oracle does not share code with the solver path.
struct Moments {
  double m[3][3] = {};
  double total = 0.0;  // sum |x - mean|^2
};

inline Moments centered_moments(const PointSet& ps, const Vector& mean) {
  Moments mo;
  const std::size_t d = ps.dim();
  for (const auto& p : ps) {
    double y[3] = {};
    for (std::size_t i = 0; i < d; ++i) y[i] = p[i] - mean[i];
    for (std::size_t i = 0; i < d; ++i) {
      mo.total += y[i] * y[i];
      for (std::size_t j = 0; j < d; ++j) mo.m[i][j] += y[i] * y[j];
    }
  }
  return mo;
}

inline double objective(const Moments& mo, const double* s, std::size_t d) {
  double q = 0.0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) q += s[i] * mo.m[i][j] * s[j];
  return mo.total - q;
}

inline bool lex_less(const Vector& a, const Vector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace detail

/// Exhaustive search over unit directions through the centroid. d = 2 scans
/// angles in [0, 180); d = 3 scans the upper hemisphere on a (polar,
/// azimuth) grid. The spacing is at most resolution_deg. Ties go to the
/// lexicographically smallest canonical direction.
inline GridSearchResult grid_search_direction(const PointSet& ps,
                                              double resolution_deg) {
  const std::size_t d = ps.dim();
  if (d != 2 && d != 3) {
    throw Error(ErrorCode::UnsupportedDimension,
                "grid search supports d = 2 or 3, got " + std::to_string(d));
  }
  if (!(resolution_deg > 0.0 && resolution_deg <= 10.0)) {
    throw Error(ErrorCode::InvalidInput, "resolution must be in (0, 10] deg");
  }

  const Centroid mean = centroid(ps);
  const detail::Moments mo = detail::centered_moments(ps, mean.value);
  constexpr double kDeg = std::numbers::pi / 180.0;

  GridSearchResult best;
  best.resolution_deg = resolution_deg;
  best.best_D = std::numeric_limits<double>::infinity();
  auto consider = [&](const Vector& raw) {
    ++best.evaluated;
    const Vector s = canonicalize_sign(raw);
    const double value = detail::objective(mo, s.data(), d);
    if (value < best.best_D ||
        (value == best.best_D && detail::lex_less(s, best.best_direction))) {
      best.best_D = value;
      best.best_direction = s;
    }
  };

  if (d == 2) {
    const auto steps = static_cast<std::size_t>(std::ceil(180.0 / resolution_deg));
    const double step = 180.0 / static_cast<double>(steps);
    for (std::size_t k = 0; k < steps; ++k) {
      const double a = static_cast<double>(k) * step * kDeg;
      consider({std::cos(a), std::sin(a)});
    }
  } else {
    const auto polar_steps =
        static_cast<std::size_t>(std::ceil(90.0 / resolution_deg));
    const auto azimuth_steps =
        static_cast<std::size_t>(std::ceil(360.0 / resolution_deg));
    const double polar_step = 90.0 / static_cast<double>(polar_steps);
    const double azimuth_step = 360.0 / static_cast<double>(azimuth_steps);
    consider({0.0, 0.0, 1.0});
    for (std::size_t i = 1; i <= polar_steps; ++i) {
      const double theta = static_cast<double>(i) * polar_step * kDeg;
      const double st = std::sin(theta);
      const double ct = std::cos(theta);
      for (std::size_t j = 0; j < azimuth_steps; ++j) {
        const double phi = static_cast<double>(j) * azimuth_step * kDeg;
        consider({st * std::cos(phi), st * std::sin(phi), ct});
      }
    }
  }

  // Report the objective as a direct per-point sum at the winning direction.
  const ParametricLine line(mean.value, best.best_direction);
  best.best_D = 0.0;
  for (const auto& p : ps) best.best_D += point_line_distance_sq(p, line);
  return best;
}

/// Closed-form roots of the characteristic polynomial of a symmetric 3x3
/// matrix (trigonometric form), descending.
inline std::array<double, 3> cubic_eigenvalues(const Matrix& a) {
  if (a.rows() != 3 || a.cols() != 3 ||
      a.asymmetry() > 1e-10 * a.max_abs()) {
    throw Error(ErrorCode::NotSymmetric, "need a symmetric 3x3 matrix");
  }
  const double off = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
  std::array<double, 3> ev{};
  if (off == 0.0) {
    ev = {a(0, 0), a(1, 1), a(2, 2)};
  } else {
    const double q = a.trace() / 3.0;
    const double b00 = a(0, 0) - q;
    const double b11 = a(1, 1) - q;
    const double b22 = a(2, 2) - q;
    const double p = std::sqrt((b00 * b00 + b11 * b11 + b22 * b22 + 2.0 * off) / 6.0);
    // det((A - qI) / p) / 2
    const double det = b00 * (b11 * b22 - a(1, 2) * a(1, 2)) -
                       a(0, 1) * (a(0, 1) * b22 - a(1, 2) * a(0, 2)) +
                       a(0, 2) * (a(0, 1) * a(1, 2) - b11 * a(0, 2));
    const double r = std::clamp(det / (2.0 * p * p * p), -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;
    const double e1 = q + 2.0 * p * std::cos(phi);
    const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
    ev = {e1, 3.0 * q - e1 - e3, e3};
  }
  std::sort(ev.begin(), ev.end(), std::greater<>());
  return ev;
}

/// Closed-form eigenvalues of a symmetric 2x2 matrix, descending.
inline std::array<double, 2> quadratic_eigenvalues(const Matrix& a) {
  if (a.rows() != 2 || a.cols() != 2 ||
      a.asymmetry() > 1e-10 * a.max_abs()) {
    throw Error(ErrorCode::NotSymmetric, "need a symmetric 2x2 matrix");
  }
  const double mid = 0.5 * (a(0, 0) + a(1, 1));
  const double rad = std::hypot(0.5 * (a(0, 0) - a(1, 1)), a(0, 1));
  return {mid + rad, mid - rad};
}

}  // namespace tlsline::oracle
