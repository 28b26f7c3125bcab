#include "dkp/heun.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dkp {

double heun_p(const HeunCanonical& hc, double x) { return hc.a + (hc.b + 1.0) / x + (hc.c + 1.0) / (x - 1.0); }

double heun_q(const HeunCanonical& hc, double x) {
  const double lin = hc.d + 0.5 * hc.a * (hc.b + hc.c + 2.0);
  const double cst = -0.5 * (hc.a * (1.0 + hc.b) - hc.b * (1.0 + hc.c) - hc.c - 2.0 * hc.h);
  return (lin * x + cst) / (x * (x - 1.0));
}

HeunMap map_to_heun(const CoulombParams& params, const EnergyParams& energy) {
  const double a2 = params.alpha() * params.alpha();
  if (!(energy.Lambda2 > a2)) throw std::invalid_argument("map_to_heun: requires Lambda^2 > alpha^2");
  const double nu = params.nu_radial();
  const double root = std::sqrt(1.0 + 2.0 * nu * nu + a2);
  const double B = std::sqrt(energy.Lambda2 - a2);
  HeunMap m;
  m.A = -1.0 + root;
  m.B = B;
  m.canonical = {2.0 * B, 2.0 * root, -2.0, 2.0 * energy.Lambda2, 2.0};
  return m;
}

double peeled_p(double A, double B, double x) { return (2.0 * A + 3.0) / x + 2.0 * B - 1.0 / (x - 1.0); }

double peeled_q(double A, double B, double Lambda2, double x) {
  return (2.0 * A * B + A + 3.0 * B) / x + (A + B - 2.0 * Lambda2) / (1.0 - x);
}

std::vector<double> heun_local_series(const HeunCanonical& hc, int K) {
  if (K < 0) throw std::invalid_argument("heun_local_series: K must be non-negative");
  const double b1 = hc.b + 1.0;
  if (b1 <= 0.0 && b1 == std::floor(b1)) throw std::domain_error("heun_local_series: resonant exponent");
  const double lin = hc.d + 0.5 * hc.a * (hc.b + hc.c + 2.0);
  const double cst = -0.5 * (hc.a * (1.0 + hc.b) - hc.b * (1.0 + hc.c) - hc.c - 2.0 * hc.h);
  std::vector<double> f(K + 1, 0.0);
  f[0] = 1.0;
  for (int k = 0; k < K; ++k) {
    const double prev = k >= 1 ? f[k - 1] : 0.0;
    const double mid = k * (k - 1.0) + k * (hc.b + hc.c + 2.0 - hc.a) + cst;
    f[k + 1] = (mid * f[k] + (hc.a * (k - 1.0) + lin) * prev) / ((k + 1.0) * (k + b1));
  }
  return f;
}

double polynomial_condition_residual(const HeunCanonical& hc, int n) {
  if (n < 0) throw std::invalid_argument("polynomial_condition_residual: n must be non-negative");
  return hc.d + hc.a * (n + 0.5 * (hc.b + hc.c + 2.0));
}

HeunTail heun_tail_diagnostic(const HeunCanonical& hc, int n) {
  const auto f = heun_local_series(hc, n + 2);
  double mx = 0.0;
  for (int k = 0; k <= n; ++k) mx = std::max(mx, std::abs(f[k]));
  return {std::abs(f[n + 1]) / mx, std::abs(f[n + 2]) / mx};
}

}  // namespace dkp
