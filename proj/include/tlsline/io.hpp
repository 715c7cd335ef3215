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

// Point file reading, number formatting and synthetic point generation.
//
// Point files hold one point per line. Fields are separated by commas or by
// runs of whitespace. Blank lines and lines starting with '#' are skipped.
// The first data row fixes the dimension.

#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "tlsline/error.hpp"
#include "tlsline/geometry.hpp"
#include "tlsline/linalg.hpp"

namespace tlsline::io {

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\v\f");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\v\f");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  if (line.find(',') != std::string_view::npos) {
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      fields.push_back(trim(line.substr(start, comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
  } else {
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
        ++i;
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])))
        ++j;
      if (j > i) fields.push_back(line.substr(i, j - i));
      i = j;
    }
  }
  return fields;
}

inline double parse_number(std::string_view field, std::size_t line_no,
                           std::size_t column) {
  auto where = [&] {
    return "line " + std::to_string(line_no) + ", column " +
           std::to_string(column + 1);
  };
  if (field.empty()) throw Error(ErrorCode::ParseError, where() + ": empty field");
  std::string_view digits = field;
  if (digits.front() == '+') digits.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc() || ptr != digits.data() + digits.size()) {
    throw Error(ErrorCode::ParseError,
                where() + ": not a number: '" + std::string(field) + "'");
  }
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::ParseError, where() + ": non-finite value");
  }
  return value;
}

}  // namespace detail

/// Reads a point file. Errors name the 1-based line and the column count.
inline PointSet read_points(std::istream& in) {
  std::vector<Vector> points;
  std::size_t dim = 0;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = detail::split_fields(line);
    if (dim == 0) dim = fields.size();
    if (fields.size() != dim) {
      throw Error(ErrorCode::ParseError,
                  "line " + std::to_string(line_no) + ": expected " +
                      std::to_string(dim) + " columns, got " +
                      std::to_string(fields.size()));
    }
    Vector p(dim);
    for (std::size_t i = 0; i < dim; ++i)
      p[i] = detail::parse_number(fields[i], line_no, i);
    points.push_back(std::move(p));
  }
  if (points.empty()) throw Error(ErrorCode::ParseError, "no points");
  if (points.size() < 2) {
    throw Error(ErrorCode::ParseError, "need at least 2 points, got 1");
  }
  if (dim < 2) {
    throw Error(ErrorCode::ParseError,
                "need at least 2 columns, got " + std::to_string(dim));
  }
  return PointSet(std::move(points));
}

/// Shortest representation that parses back to the same double.
inline std::string shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

/// Fixed 12 significant digits.
inline std::string sig12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

template <typename Format>
std::string join(std::span<const double> values, std::string_view sep,
                 Format format) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += sep;
    out += format(values[i]);
  }
  return out;
}

enum class NoiseModel { Gaussian, Uniform };

struct GeneratorParams {
  std::size_t n = 100;
  Vector anchor;
  /// Normalized before use; must be nonzero.
  Vector direction;
  double t_min = -1.0;
  double t_max = 1.0;
  /// Per-coordinate standard deviation of the noise.
  double sigma = 0.0;
  NoiseModel noise = NoiseModel::Gaussian;
  std::uint64_t seed = 42;
};

/// Points anchor + t_i u + e_i with u the unit direction, t_i uniform on
/// [t_min, t_max] and e_i isotropic noise. For each point the generator draws
/// t_i first and then one noise sample per coordinate, so a fixed seed gives
/// a fixed point sequence.
inline std::vector<Vector> generate_points(const GeneratorParams& g) {
  vec::require_same_dim(g.anchor, g.direction);
  if (g.direction.size() < 2) {
    throw Error(ErrorCode::InvalidInput, "dimension must be >= 2");
  }
  if (!(vec::norm(g.direction) > 0.0)) {
    throw Error(ErrorCode::ZeroVector, "direction must be nonzero");
  }
  if (!(g.sigma >= 0.0)) throw Error(ErrorCode::InvalidInput, "sigma must be >= 0");
  if (!(g.t_max >= g.t_min)) {
    throw Error(ErrorCode::InvalidInput, "empty parameter interval");
  }
  const Vector u = vec::normalized(g.direction);
  const std::size_t d = u.size();

  std::mt19937_64 rng(g.seed);
  std::uniform_real_distribution<double> param(g.t_min, g.t_max);
  std::normal_distribution<double> gauss(0.0, 1.0);
  // Uniform on [-sqrt(3), sqrt(3)] has unit variance.
  std::uniform_real_distribution<double> flat(-std::sqrt(3.0), std::sqrt(3.0));

  std::vector<Vector> points;
  points.reserve(g.n);
  for (std::size_t k = 0; k < g.n; ++k) {
    const double t = param(rng);
    Vector p(d);
    for (std::size_t i = 0; i < d; ++i) {
      const double z = g.noise == NoiseModel::Gaussian ? gauss(rng) : flat(rng);
      p[i] = g.anchor[i] + t * u[i] + g.sigma * z;
    }
    points.push_back(std::move(p));
  }
  return points;
}

}  // namespace tlsline::io
