#include "cavent/modes.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cavent {

namespace {

Complex standing_mode(int n, double time_coord, double offset, double length) {
  if (n < 1) {
    throw std::domain_error("mode index must be >= 1");
  }
  const double k = static_cast<double>(n) * std::numbers::pi / length;
  const double amp = std::sin(k * offset) / std::sqrt(static_cast<double>(n) * std::numbers::pi);
  const double phase = -k * time_coord;
  return {amp * std::cos(phase), amp * std::sin(phase)};
}

}  // namespace

Complex minkowski_mode(int n, double t, double x, double L, double x1) {
  if (!(x >= x1 && x <= x1 + L)) {
    throw std::domain_error("minkowski_mode: x outside the cavity [x1, x1 + L]");
  }
  return standing_mode(n, t, x - x1, L);
}

Complex rindler_mode(int n, double eta, double xi, double Lp) {
  if (!(xi >= 0.0 && xi <= Lp)) {
    throw std::domain_error("rindler_mode: xi outside the cavity [0, L']");
  }
  return standing_mode(n, eta, xi, Lp);
}

double mode_frequency(int n, double length) {
  if (n < 1) {
    throw std::domain_error("mode_frequency: mode index must be >= 1");
  }
  if (!(length > 0.0)) {
    throw std::domain_error("mode_frequency: length must be positive");
  }
  return static_cast<double>(n) * std::numbers::pi / length;
}

}  // namespace cavent
