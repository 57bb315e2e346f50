#include "hpilg/discrete_function.hpp"

#include <mutex>
#include <stdexcept>

namespace hpilg {

namespace {
std::mutex locator_mutex;
}

DiscreteFunction::DiscreteFunction(const HpSpace& space, std::vector<double> coefficients)
    : space_(&space), c_(std::move(coefficients)) {
  if (c_.size() != space.free_count())
    throw std::invalid_argument("DiscreteFunction: coefficient vector has wrong size");
}

void DiscreteFunction::local_coefficients(std::size_t t, double* out) const {
  const auto dofs = space_->element_dofs(t);
  const auto signs = space_->element_signs(t);
  for (std::size_t i = 0; i < dofs.size(); ++i) out[i] = dofs[i] >= 0 ? signs[i] * c_[dofs[i]] : 0.0;
}

FieldValue DiscreteFunction::evaluate(std::size_t t, Point2 ref) const {
  const std::size_t m = space_->local_size();
  std::vector<double> c(m), v(m), dx(m), dy(m);
  local_coefficients(t, c.data());
  space_->shapes().eval(ref, v, dx, dy);
  double u = 0.0, gx = 0.0, gy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    u += c[i] * v[i];
    gx += c[i] * dx[i];
    gy += c[i] * dy[i];
  }
  return {u, space_->mesh().affine_map(t).push_gradient(gx, gy)};
}

const PointLocator& DiscreteFunction::locator() const {
  std::lock_guard lock(locator_mutex);
  if (!locator_) locator_ = std::make_shared<const PointLocator>(space_->mesh());
  return *locator_;
}

FieldValue DiscreteFunction::evaluate(Point2 x) const {
  const Location loc = locator().locate(x);
  return evaluate(static_cast<std::size_t>(loc.triangle), loc.ref);
}

}  // namespace hpilg
