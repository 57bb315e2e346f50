#pragma once

#include <functional>
#include <vector>

#include "hpilg/discrete_function.hpp"
#include "hpilg/hp_space.hpp"

namespace hpilg {

/// A function given by its value and gradient at physical points.
using Field = std::function<FieldValue(Point2)>;

/// Projection-based interpolant of u in `space`: vertex values, then on
/// each edge the H^1_0 projection of the remainder onto the edge modes, then
/// on each triangle the H^1_0 projection onto the bubbles. Constrained DOFs
/// are left at zero. Reproduces every element of the space exactly.
std::vector<double> interpolate(const HpSpace& space, const Field& u);

/// Interpolant of `previous` (on the level p mesh and space) in `next`.
/// Evaluation points are located in the old mesh.
std::vector<double> project_initial_guess(const DiscreteFunction& previous, const HpSpace& next);

}  // namespace hpilg
