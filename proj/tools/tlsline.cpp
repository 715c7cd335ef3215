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

#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tlsline/cli.hpp"

namespace {

using tlsline::cli::CliConfig;
using tlsline::cli::Format;

struct Streams {
  std::unique_ptr<std::ifstream> file_in;
  std::unique_ptr<std::ofstream> file_out;
  std::istream* in = &std::cin;
  std::ostream* out = &std::cout;
};

bool open_streams(const std::string& input, const std::string& output,
                  Streams& s) {
  if (!input.empty() && input != "-") {
    s.file_in = std::make_unique<std::ifstream>(input);
    if (!*s.file_in) {
      std::cerr << "error: cannot read " << input << '\n';
      return false;
    }
    s.in = s.file_in.get();
  }
  if (!output.empty() && output != "-") {
    s.file_out = std::make_unique<std::ofstream>(output, std::ios::binary);
    if (!*s.file_out) {
      std::cerr << "error: cannot write " << output << '\n';
      return false;
    }
    s.out = s.file_out.get();
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orthogonal-distance (total least squares) line fitting in E^d"};
  app.require_subcommand(1);

  CliConfig cfg;
  std::string input;
  std::string output;
  std::size_t dependent_col = 0;
  std::size_t dim = 3;
  std::vector<double> direction;
  std::vector<double> anchor;
  std::string noise = "gaussian";

  const std::map<std::string, Format> formats{
      {"table", Format::Table}, {"json", Format::Json}, {"csv", Format::Csv}};

  auto add_io = [&](CLI::App* sub) {
    sub->add_option("-i,--input", input, "Point file ('-' or omitted: stdin)");
    sub->add_option("-o,--output", output, "Output file ('-' or omitted: stdout)");
  };
  auto add_solver = [&](CLI::App* sub) {
    sub->add_option("--tol", cfg.solver.tol, "Jacobi off-diagonal tolerance")
        ->check(CLI::PositiveNumber);
    sub->add_option("--max-sweeps", cfg.solver.max_sweeps, "Jacobi sweep limit")
        ->check(CLI::Range(1, 1000000));
    sub->add_option("--ambiguity-gap", cfg.solver.ambiguity_gap,
                    "Relative eigenvalue gap flagged as ambiguous")
        ->check(CLI::NonNegativeNumber);
  };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("-f,--format", cfg.format, "table | json | csv")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case).description(""))
        ->type_name("FORMAT");
  };

  auto* fit = app.add_subcommand("fit", "Fit a line to a point file");
  add_io(fit);
  add_format(fit);
  add_solver(fit);
  fit->add_flag("--residuals", cfg.residuals, "Include per-point squared distances");

  auto* gen = app.add_subcommand("gen", "Generate noisy points along a line");
  gen->add_option("-o,--output", output, "Output file ('-' or omitted: stdout)");
  gen->add_option("--seed", cfg.gen.seed, "RNG seed");
  gen->add_option("--n", cfg.gen.n, "Number of points")->check(CLI::Range(2ul, 100000000ul));
  auto* dim_opt = gen->add_option("--dim", dim, "Dimension (default 3)")
                      ->check(CLI::Range(2ul, 100000ul));
  gen->add_option("--sigma", cfg.gen.sigma, "Noise standard deviation per coordinate")
      ->check(CLI::NonNegativeNumber);
  gen->add_option("--direction", direction, "Line direction, e.g. 1,2,3")
      ->delimiter(',');
  gen->add_option("--anchor", anchor, "Point on the line (default origin)")
      ->delimiter(',');
  gen->add_option("--t-min", cfg.gen.t_min, "Lower end of the line parameter");
  gen->add_option("--t-max", cfg.gen.t_max, "Upper end of the line parameter");
  gen->add_option("--noise", noise, "gaussian | uniform")
      ->check(CLI::IsMember({"gaussian", "uniform"}));

  auto* compare = app.add_subcommand(
      "compare", "Compare the orthogonal fit with explicit regression");
  add_io(compare);
  add_format(compare);
  add_solver(compare);
  auto* dep_opt = compare->add_option("--dependent-col", dependent_col,
                                      "Regression target column (default last)");

  auto* check = app.add_subcommand("check", "Cross-check a fit against oracles");
  add_io(check);
  add_solver(check);
  check->add_option("--resolution-deg", cfg.resolution_deg,
                    "Grid search spacing in degrees")
      ->check(CLI::Range(1e-6, 10.0));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : tlsline::cli::kUsage;
  }

  if (*dep_opt) cfg.dependent_col = dependent_col;

  if (*gen) {
    if (direction.empty()) {
      direction.assign(*dim_opt ? dim : 3, 1.0);
    } else if (*dim_opt && direction.size() != dim) {
      std::cerr << "error: --direction has " << direction.size()
                << " components but --dim is " << dim << '\n';
      return tlsline::cli::kUsage;
    }
    if (anchor.empty()) anchor.assign(direction.size(), 0.0);
    if (anchor.size() != direction.size()) {
      std::cerr << "error: --anchor and --direction differ in dimension\n";
      return tlsline::cli::kUsage;
    }
    cfg.gen.direction = direction;
    cfg.gen.anchor = anchor;
    cfg.gen.noise = noise == "uniform" ? tlsline::io::NoiseModel::Uniform
                                       : tlsline::io::NoiseModel::Gaussian;
  }

  Streams s;
  if (!open_streams(*gen ? std::string() : input, output, s)) {
    return tlsline::cli::kBadInput;
  }

  try {
    if (*fit) return tlsline::cli::cmd_fit(cfg, *s.in, *s.out, std::cerr);
    if (*gen) return tlsline::cli::cmd_gen(cfg, *s.out, std::cerr);
    if (*compare) return tlsline::cli::cmd_compare(cfg, *s.in, *s.out, std::cerr);
    return tlsline::cli::cmd_check(cfg, *s.in, *s.out, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return tlsline::cli::kUsage;
  }
}
