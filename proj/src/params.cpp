#include "weinstein/params.hpp"

#include <cmath>
#include <string>

#include "weinstein/error.hpp"

namespace weinstein {

WeinsteinParams::WeinsteinParams(int d, double alpha) : d_(d), alpha_(alpha) {
  if (d < 1) throw DomainError("dimension d must be >= 1, got " + std::to_string(d));
  if (!std::isfinite(alpha) || !(alpha > -0.5)) {
    throw DomainError("alpha out of range: need alpha > -1/2, got " + std::to_string(alpha));
  }
  degree_ = 2.0 * alpha_ + static_cast<double>(d_) + 2.0;
}

}  // namespace weinstein
