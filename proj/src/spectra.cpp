#include "dkp/spectra.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dkp {

const char* to_string(Branch b) noexcept {
  switch (b) {
    case Branch::ScalarLike: return "scalar";
    case Branch::JZero: return "jzero";
    case Branch::HeunBranch: return "heun";
    case Branch::NonRelMinus: return "nonrel-minus";
    case Branch::NonRelPlus: return "nonrel-plus";
    case Branch::NonRelBig: return "nonrel-big";
  }
  return "?";
}

Branch parse_branch(const std::string& name) {
  for (Branch b : {Branch::ScalarLike, Branch::JZero, Branch::HeunBranch, Branch::NonRelMinus, Branch::NonRelPlus,
                   Branch::NonRelBig})
    if (name == to_string(b)) return b;
  throw std::invalid_argument("unknown branch '" + name +
                              "' (expected scalar, jzero, heun, nonrel-minus, nonrel-plus or nonrel-big)");
}

bool is_relativistic(Branch b) noexcept {
  return b == Branch::ScalarLike || b == Branch::JZero || b == Branch::HeunBranch;
}

EnergyLevel spectrum_scalar_like(double alpha, int j, int n) {
  if (j < 0 || n < 0) throw std::invalid_argument("spectrum_scalar_like: j and n must be non-negative");
  const double disc = (j + 0.5) * (j + 0.5) - alpha * alpha;
  if (disc < 0.0) throw std::domain_error("spectrum_scalar_like: alpha > j + 1/2 makes the root imaginary");
  const double N = n + 0.5 + std::sqrt(disc);
  return {Branch::ScalarLike, n, j, alpha, 1.0 / std::sqrt(1.0 + alpha * alpha / (N * N)), N};
}

EnergyLevel spectrum_jzero(double alpha, int N) {
  if (N < 0) throw std::invalid_argument("spectrum_jzero: N must be non-negative");
  const double disc = 9.0 - 4.0 * alpha * alpha;
  if (!(disc > 0.0)) throw std::domain_error("spectrum_jzero: alpha >= 3/2 makes Gamma imaginary");
  const double gamma = 0.5 * (1.0 + std::sqrt(disc));
  const double Ne = gamma + N;
  return {Branch::JZero, N, 0, alpha, 1.0 / std::sqrt(1.0 + alpha * alpha / (Ne * Ne)), Ne};
}

double heun_energy_from_n_effective(double alpha, double N) {
  const double t = 4.0 * alpha * alpha / (N * N);
  if (!(t < 1.0)) throw std::domain_error("heun spectrum: N^2 <= 4 alpha^2 makes the root imaginary");
  // 2 alpha^2 / (N^2 - sqrt(N^4 - 4 alpha^2 N^2)) rewritten without cancellation
  return std::sqrt(0.5 * (1.0 + std::sqrt(1.0 - t)));
}

double heun_quartic_residual(double alpha, double N, double e) {
  const double a2 = alpha * alpha;
  const double L2 = a2 / (e * e);
  const double gap = a2 * (1.0 - e) * (1.0 + e) / (e * e);  // Lambda^2 - alpha^2
  return std::abs(L2 * L2 / gap - N * N) / (N * N);
}

EnergyLevel spectrum_heun(double alpha, int j, int n) {
  if (j < 1) throw std::invalid_argument("spectrum_heun: the Heun branch requires j >= 1");
  if (n < 0) throw std::invalid_argument("spectrum_heun: n must be non-negative");
  const double N = n + std::sqrt(1.0 + j * (j + 1.0) + alpha * alpha);
  const double e = heun_energy_from_n_effective(alpha, N);
  // the other quartic root tends to alpha/N, not to 1, as alpha -> 0
  if (!(e > 0.5 && e < 1.0)) throw std::logic_error("spectrum_heun: root selection failed");
  // rounding of e itself limits the attainable residual to about ulp/(1 - e)
  const double tol = 1e-11 + 8.0 * std::numeric_limits<double>::epsilon() / (1.0 - e);
  if (heun_quartic_residual(alpha, N, e) > tol)
    throw std::logic_error("spectrum_heun: back-substitution into the quartic failed");
  return {Branch::HeunBranch, n, j, alpha, e, N};
}

double nonrel_limit(const EnergyLevel& level) {
  return -level.alpha * level.alpha / (2.0 * level.n_effective * level.n_effective);
}

}  // namespace dkp
