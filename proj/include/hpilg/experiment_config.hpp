#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "hpilg/assembly.hpp"
#include "hpilg/ilg_solver.hpp"
#include "hpilg/polygon_mesh.hpp"

namespace hpilg {

/// Right-hand side selection:
///   constant:c             f = c
///   polynomial:c:a:b,...   f = sum c x^a y^b
///   manufactured           f = -Laplace(u*) + lambda (u*)^(2q+1),
///                          u* = x (1 - x) y (1 - y)
struct ForcingSpec {
  enum class Kind { constant, polynomial, manufactured };
  Kind kind = Kind::constant;
  Polynomial2D polynomial = Polynomial2D::constant(1.0);

  static ForcingSpec parse(const std::string& text);
  std::string to_string() const;
};

/// Parameters of one convergence study. Read from a flat text file of
/// `key = value` lines; `#` starts a comment; unknown keys are errors.
///
///   domain          = square | lshape | custom
///   corners         = x0 y0, x1 y1, ...        (custom only)
///   dirichlet_edges = 0 1 2 ... | all          (0-based edge indices)
///   mesh            = builtin | ear
///   p_max, lambda, q, alpha, max_iterations, ref_delta, seed
///   f               = see ForcingSpec
///   stopping        = relative:theta | relative_energy:theta | fixed:n | coupled:c
///   solver          = dense | condensed
///   deterministic   = true | false
struct ExperimentConfig {
  std::string domain = "square";
  std::vector<Point2> corners;
  std::vector<std::size_t> dirichlet_edges;  ///< empty: every edge
  std::string mesh = "builtin";
  int p_max = 10;
  double lambda = 1.0;
  int q = 1;
  ForcingSpec f;
  double alpha = 0.5;
  StoppingRule stopping;
  int max_iterations = 500;
  SolverPath solver = SolverPath::condensed;
  int ref_delta = 2;
  double ref_theta = 1e-12;
  bool deterministic = false;
  std::uint64_t seed = 1;

  /// Lines of the parsed file, verbatim and in order.
  std::vector<std::string> source_lines;

  static ExperimentConfig parse(std::istream& is);
  static ExperimentConfig from_file(const std::filesystem::path& path);
  /// Throws ConfigError on invalid combinations.
  void validate() const;

  PolygonDomain make_domain() const;
  HpMesh initial_mesh() const;
  IlgConfig ilg_config() const;
  /// Canonical key = value listing of every field.
  std::string to_text() const;
};

}  // namespace hpilg
