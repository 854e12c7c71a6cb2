#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>

#include "hsm/h3geom.hpp"

namespace hsm {

namespace {

constexpr double kSeriesCutoff = 1e-3;

// Near zero: -int_0^x log(2 sin t) dt = x - x log(2x) + x^3/18 + x^5/900 + O(x^7).
double small_angle(double x) {
  if (x == 0) return 0;
  const double x3 = x * x * x;
  return x - x * std::log(2 * x) + x3 / 18 + x3 * x * x / 900;
}

double integrate_log2sin(double a, double b) {
  using boost::math::quadrature::gauss_kronrod;
  auto f = [](double t) { return std::log(std::abs(2 * std::sin(t))); };
  double err = 0;
  return gauss_kronrod<double, 31>::integrate(f, a, b, 20, 1e-14, &err);
}

}  // namespace

double lobachevsky(double theta) {
  // Odd and pi-periodic.
  if (theta < 0) return -lobachevsky(-theta);
  theta = std::fmod(theta, kPi);
  if (theta > kPi / 2) return -lobachevsky(kPi - theta);
  if (theta <= kSeriesCutoff) return small_angle(theta);
  return small_angle(kSeriesCutoff) - integrate_log2sin(kSeriesCutoff, theta);
}

double tetrahedron_volume() { return 5.0 / 6.0 * lobachevsky(kPi / 3); }

}  // namespace hsm
