#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

#include "hpilg/flops.hpp"
#include "hpilg/hp_space.hpp"
#include "hpilg/polynomial.hpp"
#include "hpilg/quadrature.hpp"

namespace hpilg {

/// Selects the element-loop implementation. Both produce bitwise identical
/// results: element contributions are computed independently and summed
/// into global arrays in element order.
enum class Execution { serial, parallel };

/// Shape values and reference gradients at the points of a rule, stored
/// point-major: entry [k * modes + i] is mode i at point k.
struct Tabulation {
  TriangleRule rule;
  std::size_t modes = 0;
  std::vector<double> value;
  std::vector<double> dx;
  std::vector<double> dy;
};

Tabulation tabulate(const ShapeTable& shapes, const TriangleRule& rule);

/// Signed element stiffness matrices, one dense row-major m x m block per
/// triangle, with orientation signs already applied.
class ElementBlocks {
 public:
  ElementBlocks() = default;
  ElementBlocks(std::size_t elements, std::size_t local_size)
      : m_(local_size), count_(elements), data_(elements * local_size * local_size, 0.0) {}

  std::size_t element_count() const { return count_; }
  std::size_t local_size() const { return m_; }
  std::span<double> block(std::size_t t) { return {data_.data() + t * m_ * m_, m_ * m_}; }
  std::span<const double> block(std::size_t t) const { return {data_.data() + t * m_ * m_, m_ * m_}; }
  const std::vector<double>& data() const { return data_; }

 private:
  std::size_t m_ = 0;
  std::size_t count_ = 0;
  std::vector<double> data_;
};

/// Symmetric matrix in row-packed lower-triangular storage.
struct SymmetricSystem {
  std::size_t n = 0;
  std::vector<double> packed;
  /// Element blocks the matrix was assembled from, if kept.
  std::shared_ptr<const ElementBlocks> blocks;

  double operator()(std::size_t i, std::size_t j) const;
};

/// Elementwise polynomial representation of the right-hand side f.
class DataSurrogate {
 public:
  /// f itself, used exactly.
  static DataSurrogate exact(Polynomial2D f);
  /// Elementwise L2 projection of f onto polynomials of total degree
  /// `degree`, computed with a rule of degree 2 degree + 2.
  static DataSurrogate projected(const HpMesh& mesh, const std::function<double(Point2)>& f,
                                 int degree);

  bool is_exact() const { return exact_; }
  int degree() const { return degree_; }
  const Polynomial2D& polynomial() const { return poly_; }

  /// Values on triangle t at the points of `rule`.
  void values(std::size_t t, const AffineMap& map, const TriangleRule& rule, double* out) const;

 private:
  bool exact_ = true;
  int degree_ = 0;
  Polynomial2D poly_;
  std::shared_ptr<const ShapeTable> table_;
  std::size_t modes_ = 0;
  std::vector<double> coefficients_;  // modes_ per triangle
};

/// Element stiffness blocks a_T(phi_i, phi_j), integrated exactly with a
/// rule of degree 2p on the reference element.
ElementBlocks assemble_element_blocks(const HpSpace& space, Execution exec = Execution::parallel,
                                      FlopCounter* flops = nullptr);

/// Global stiffness matrix over the free DOFs; keeps the element blocks.
SymmetricSystem assemble_stiffness(const HpSpace& space, Execution exec = Execution::parallel,
                                   FlopCounter* flops = nullptr);

/// Sums element blocks into packed global storage in element order.
SymmetricSystem assemble_global(const HpSpace& space, std::shared_ptr<const ElementBlocks> blocks,
                                FlopCounter* flops = nullptr);

/// Load vector sum_T Q_T(f phi_i) with a rule of degree deg(f) + p.
std::vector<double> assemble_load(const HpSpace& space, const DataSurrogate& f,
                                  Execution exec = Execution::parallel, FlopCounter* flops = nullptr);

/// The nonlinear form lambda b(U; phi_i) = lambda int u^(2q+1) phi_i, with
/// the shape functions tabulated once on a rule of degree 2p(q+1).
class NonlinearForm {
 public:
  NonlinearForm(const HpSpace& space, int q);

  int exponent() const { return q_; }
  int quadrature_degree() const { return rule_degree_; }
  std::vector<double> evaluate(std::span<const double> u, double lambda,
                               Execution exec = Execution::parallel,
                               FlopCounter* flops = nullptr) const;

 private:
  const HpSpace* space_;
  int q_;
  int rule_degree_;
  Tabulation tables_;
};

std::vector<double> assemble_nonlinear(const HpSpace& space, std::span<const double> u, double lambda,
                                       int q, Execution exec = Execution::parallel,
                                       FlopCounter* flops = nullptr);

/// y = A x through the element blocks.
std::vector<double> apply_stiffness(const HpSpace& space, const ElementBlocks& blocks,
                                    std::span<const double> x, Execution exec = Execution::parallel);

/// sqrt(x^T A x) = ||grad x_h||_L2.
double energy_norm(const HpSpace& space, const ElementBlocks& blocks, std::span<const double> x,
                   Execution exec = Execution::parallel);

/// Plain-text dumps: the dimension, then the entries with 17 significant
/// digits (full rows for matrices).
void write_matrix(std::ostream& os, const SymmetricSystem& system);
void write_vector(std::ostream& os, std::span<const double> v);

}  // namespace hpilg
