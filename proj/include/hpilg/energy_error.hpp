#pragma once

#include "hpilg/assembly.hpp"
#include "hpilg/discrete_function.hpp"
#include "hpilg/polynomial.hpp"

namespace hpilg {

/// ||grad(u - u_ref)||_L2 for discrete functions on two possibly
/// non-nested meshes of the same domain. Every reference triangle is clipped
/// against the coarse triangles it overlaps; on each convex piece both
/// functions are polynomials, and the piece is integrated with a rule of
/// degree 2 p_ref + extra_degree, which is exact for p <= p_ref.
double compute_energy_error(const DiscreteFunction& u, const DiscreteFunction& u_ref,
                            int extra_degree = 0, Execution exec = Execution::parallel);

/// ||grad(u - exact)||_L2 for a polynomial exact solution, integrated
/// exactly triangle by triangle.
double energy_error_exact(const DiscreteFunction& u, const Polynomial2D& exact,
                          Execution exec = Execution::parallel);

/// Convex polygon clipping of `subject` by the counterclockwise triangle
/// (a, b, c) (Sutherland-Hodgman).
std::vector<Point2> clip_to_triangle(std::vector<Point2> subject, Point2 a, Point2 b, Point2 c);

}  // namespace hpilg
