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

// Direction solver for the line-fitting objective
//
//   D(s) = s^T R s / s^T s,   R = xi I - Omega.
//
// D is stationary exactly where (Omega - (s^T Omega s) I) s = 0 for unit s,
// i.e. at every eigenvector of Omega. Since D = xi - s^T Omega s on the unit
// sphere, the minimum is attained at the eigenvector of the largest
// eigenvalue. The full spectrum comes from cyclic Jacobi rotations, which is
// deterministic and accurate for the small d this library targets.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <utility>

#include "tlsline/error.hpp"
#include "tlsline/geometry.hpp"
#include "tlsline/linalg.hpp"
#include "tlsline/scatter.hpp"

namespace tlsline {

struct SolverConfig {
  /// Sweeps stop once the off-diagonal Frobenius norm is <= tol * ||A||_F.
  double tol = 1e-12;
  int max_sweeps = 64;
  /// Relative gap (l1 - l2) / l1 below which the fit is flagged ambiguous.
  double ambiguity_gap = 1e-8;

  void validate() const {
    if (!(tol > 0.0)) throw Error(ErrorCode::InvalidInput, "tol must be > 0");
    if (max_sweeps < 1) {
      throw Error(ErrorCode::InvalidInput, "max_sweeps must be >= 1");
    }
    if (!(ambiguity_gap >= 0.0)) {
      throw Error(ErrorCode::InvalidInput, "ambiguity_gap must be >= 0");
    }
  }
};

/// Eigen-decomposition of a symmetric matrix: values descending, vectors
/// stored as the matching columns.
struct SymmetricEigen {
  Vector values;
  Matrix vectors;
  int sweeps = 0;

  Vector vector(std::size_t k) const {
    Vector v(vectors.rows());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = vectors(i, k);
    return v;
  }
};

struct EigenSolution {
  Vector direction;
  double rayleigh = 0.0;
  double stationarity_residual = 0.0;
  bool ambiguous = false;
  Vector spectrum;
  int sweeps = 0;
};

/// Symmetry tolerance on solver inputs, relative to the largest entry.
inline constexpr double kSymmetryTolerance = 1e-10;

namespace detail {

inline void require_symmetric(const Matrix& a) {
  if (!a.square() || a.rows() == 0) {
    throw Error(ErrorCode::NotSymmetric, "matrix is not square");
  }
  if (!vec::all_finite(a.data())) {
    throw Error(ErrorCode::InvalidInput, "matrix is not finite");
  }
  if (a.asymmetry() > kSymmetryTolerance * a.max_abs()) {
    throw Error(ErrorCode::NotSymmetric,
                "asymmetry " + std::to_string(a.asymmetry()));
  }
}

inline double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j) s += a(i, j) * a(i, j);
  return std::sqrt(2.0 * s);
}

/// A <- J^T A J and V <- V J for the rotation J in the (p, q) plane that
/// zeroes A(p, q).
inline void jacobi_rotate(Matrix& a, Matrix& v, std::size_t p, std::size_t q) {
  const double apq = a(p, q);
  if (apq == 0.0) return;
  const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
  // Smaller root of t^2 + 2 tau t - 1 = 0, so |angle| <= pi/4.
  const double t = std::isinf(tau * tau)
                       ? 1.0 / (2.0 * tau)
                       : std::copysign(1.0, tau) /
                             (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    const double akp = a(k, p);
    const double akq = a(k, q);
    a(k, p) = c * akp - s * akq;
    a(k, q) = s * akp + c * akq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const double apk = a(p, k);
    const double aqk = a(q, k);
    a(p, k) = c * apk - s * aqk;
    a(q, k) = s * apk + c * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double vkp = v(k, p);
    const double vkq = v(k, q);
    v(k, p) = c * vkp - s * vkq;
    v(k, q) = s * vkp + c * vkq;
  }
}

}  // namespace detail

/// Full eigen-decomposition by cyclic Jacobi, pivots visited row by row.
/// Throws NoConvergence if the off-diagonal part has not dropped below
/// cfg.tol * ||A||_F after cfg.max_sweeps sweeps.
inline SymmetricEigen jacobi_eigen(const Matrix& sym,
                                   const SolverConfig& cfg = {}) {
  cfg.validate();
  detail::require_symmetric(sym);
  const std::size_t n = sym.rows();

  Matrix a = sym;
  a.symmetrize();
  Matrix v = Matrix::identity(n);
  const double threshold = cfg.tol * a.frobenius_norm();

  int sweeps = 0;
  while (detail::off_diagonal_norm(a) > threshold) {
    if (sweeps == cfg.max_sweeps) {
      throw Error(ErrorCode::NoConvergence,
                  "off-diagonal norm " +
                      std::to_string(detail::off_diagonal_norm(a)) +
                      " after " + std::to_string(sweeps) + " sweeps");
    }
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) detail::jacobi_rotate(a, v, p, q);
    ++sweeps;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

  SymmetricEigen out;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  out.sweeps = sweeps;
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

/// || Omega s - (s^T Omega s) s || for unit s; zero iff s is an eigenvector.
inline double stationarity_residual(const Matrix& omega,
                                    std::span<const double> s) {
  if (std::abs(vec::norm(s) - 1.0) > 1e-9) {
    throw Error(ErrorCode::NotUnit, "direction must have unit length");
  }
  const Vector os = omega * s;
  const double lambda = vec::dot(s, os);
  return vec::norm(vec::axpy(os, -lambda, s));
}

/// Eigenvector of the largest eigenvalue of Omega, i.e. the direction that
/// minimizes xi - s^T Omega s.
inline EigenSolution dominant_eigenpair(const Matrix& omega,
                                        const SolverConfig& cfg = {}) {
  const SymmetricEigen eig = jacobi_eigen(omega, cfg);

  EigenSolution sol;
  sol.direction = canonicalize_sign(vec::normalized(eig.vector(0)));
  sol.rayleigh = quadratic_form(omega, sol.direction);
  sol.stationarity_residual = stationarity_residual(omega, sol.direction);
  sol.spectrum = eig.values;
  sol.sweeps = eig.sweeps;

  const double scale = std::max(std::abs(omega.trace()), omega.frobenius_norm());
  if (sol.stationarity_residual > 1e-8 * scale) {
    throw Error(ErrorCode::NoConvergence,
                "stationarity residual " +
                    std::to_string(sol.stationarity_residual));
  }

  if (eig.values.size() >= 2) {
    const double l1 = eig.values[0];
    const double l2 = eig.values[1];
    const double denom =
        std::max(std::abs(l1), std::numeric_limits<double>::min());
    sol.ambiguous = (l1 - l2) / denom < cfg.ambiguity_gap;
  }
  return sol;
}

namespace detail {

inline void require_nonzero(std::span<const double> s) {
  if (!(vec::norm_sq(s) > 0.0)) {
    throw Error(ErrorCode::ZeroVector, "direction must be nonzero");
  }
}

}  // namespace detail

/// Total squared orthogonal distance of the centered points to the line
/// through the origin along s: the Rayleigh quotient s^T R s / s^T s.
inline double objective_D(const ScatterSummary& summary,
                          std::span<const double> s) {
  vec::require_same_dim(s, Vector(summary.dim()));
  detail::require_nonzero(s);
  return quadratic_form(summary.r, s) / vec::norm_sq(s);
}

/// Both vector forms of the stationarity condition for a non-unit s:
///   first  = (s^T s) R s - (s^T R s) s
///   second = -[(s^T s) Omega s - (s^T Omega s) s]
/// They are algebraically identical because R = xi I - Omega.
inline std::pair<Vector, Vector> stationarity_forms_agree(
    const ScatterSummary& summary, std::span<const double> s) {
  vec::require_same_dim(s, Vector(summary.dim()));
  detail::require_nonzero(s);
  const double ss = vec::norm_sq(s);

  const Vector rs = summary.r * s;
  Vector first = vec::axpy(vec::scale(rs, ss), -vec::dot(s, rs), s);

  const Vector os = summary.omega * s;
  Vector second = vec::axpy(vec::scale(os, -ss), vec::dot(s, os), s);
  return {std::move(first), std::move(second)};
}

/// dD/ds = 2 [(s^T s) R s - (s^T R s) s] / (s^T s)^2
inline Vector analytic_gradient(const ScatterSummary& summary,
                                std::span<const double> s) {
  const Vector form = stationarity_forms_agree(summary, s).first;
  const double ss = vec::norm_sq(s);
  return vec::scale(form, 2.0 / (ss * ss));
}

/// Central-difference gradient of objective_D with step h.
inline Vector finite_diff_gradient(const ScatterSummary& summary,
                                   std::span<const double> s, double h) {
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidInput, "step must be > 0");
  detail::require_nonzero(s);
  Vector g(s.size());
  Vector probe(s.begin(), s.end());
  for (std::size_t i = 0; i < s.size(); ++i) {
    probe[i] = s[i] + h;
    const double up = objective_D(summary, probe);
    probe[i] = s[i] - h;
    const double down = objective_D(summary, probe);
    probe[i] = s[i];
    g[i] = (up - down) / (2.0 * h);
  }
  return g;
}

}  // namespace tlsline
