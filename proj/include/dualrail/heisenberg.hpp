// heisenberg.hpp -- closed-form mode mixing for the detuned beamsplitter.
//
// With H = (g/2)(a b+ + a+ b) + delta a+a, the Heisenberg-picture ladder
// operators satisfy d/dt (a,b) = -iM (a,b) with M = [[delta, g/2], [g/2, 0]].
// heisenberg_bs returns exp(-iMt); row 0 gives a(t) in terms of (a, b).
#pragma once

#include <cmath>
#include <complex>

#include <Eigen/Dense>

namespace dualrail::dynamics {

// sin(z)/z with the small-argument series so delta = g = 0 stays finite.
inline double sinc_half(double z) {
  if (std::abs(z) < 1e-6) return 1.0 - z * z / 6.0;
  return std::sin(z) / z;
}

inline Eigen::Matrix2cd heisenberg_bs(double g, double delta, double t) {
  const std::complex<double> i(0.0, 1.0);
  const double omega = std::hypot(g, delta);
  const double z = 0.5 * omega * t;
  const double snc = sinc_half(z);
  const std::complex<double> frame = std::exp(-i * 0.5 * delta * t);
  // exp(-iMt) = e^{-i delta t/2} [cos(z) I - i sin(z)/omega * (2M - delta I)]
  Eigen::Matrix2cd u;
  u(0, 0) = frame * (std::cos(z) - i * 0.5 * delta * t * snc);
  u(0, 1) = frame * (-i * 0.5 * g * t * snc);
  u(1, 0) = u(0, 1);
  u(1, 1) = frame * (std::cos(z) + i * 0.5 * delta * t * snc);
  return u;
}

}  // namespace dualrail::dynamics
