#pragma once

#include <memory>
#include <span>
#include <vector>

#include "hpilg/hp_space.hpp"
#include "hpilg/point_locator.hpp"

namespace hpilg {

struct FieldValue {
  double value = 0.0;
  Point2 gradient;
};

/// A coefficient vector over the free DOFs of an HpSpace, evaluable at
/// arbitrary points of the domain. The space must outlive the function.
class DiscreteFunction {
 public:
  DiscreteFunction(const HpSpace& space, std::vector<double> coefficients);

  const HpSpace& space() const { return *space_; }
  const std::vector<double>& coefficients() const { return c_; }

  /// Signed local coefficients of triangle t (zero on constrained modes).
  void local_coefficients(std::size_t t, double* out) const;
  /// Value and physical gradient on triangle t at reference point `ref`.
  FieldValue evaluate(std::size_t t, Point2 ref) const;
  /// Value and gradient at a physical point, located in the mesh.
  FieldValue evaluate(Point2 x) const;
  double operator()(Point2 x) const { return evaluate(x).value; }

  const PointLocator& locator() const;

 private:
  const HpSpace* space_;
  std::vector<double> c_;
  mutable std::shared_ptr<const PointLocator> locator_;
};

}  // namespace hpilg
