#include "dkp/core_params.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dkp {

const char* to_string(Parity p) noexcept {
  return p == Parity::MinusToJ ? "(-1)^j" : "(-1)^(j+1)";
}

CoulombParams::CoulombParams(double alpha, int j, Parity parity, double mass)
    : alpha_(alpha), mass_(mass), j_(j), parity_(parity) {
  if (!std::isfinite(alpha) || alpha < 0.0)
    throw std::invalid_argument("alpha must be finite and non-negative");
  if (!std::isfinite(mass) || mass <= 0.0)
    throw std::invalid_argument("mass must be finite and positive");
  if (j < 0) throw std::invalid_argument("j must be a non-negative integer");
  if (j == 0 && parity == Parity::MinusToJ)
    throw std::invalid_argument("j = 0 admits only parity (-1)^(j+1)");
}

double CoulombParams::nu_radial() const noexcept {
  return std::sqrt(0.5 * static_cast<double>(j_) * (j_ + 1));
}

double CoulombParams::nu_angular() const noexcept {
  return std::sqrt(static_cast<double>(j_) * (j_ + 1));
}

std::vector<std::string> CoulombParams::warnings() const {
  std::vector<std::string> out;
  if (alpha_ >= 1.5) {
    std::ostringstream s;
    s << "alpha = " << alpha_ << " >= 3/2: the j = 0 index sqrt(9 - 4 alpha^2) is not real";
    out.push_back(s.str());
  }
  if (alpha_ > j_ + 0.5) {
    std::ostringstream s;
    s << "alpha = " << alpha_ << " > j + 1/2: the scalar-like root sqrt((j+1/2)^2 - alpha^2) is not real";
    out.push_back(s.str());
  }
  return out;
}

double derived_nu(const CoulombParams& params) noexcept { return params.nu_radial(); }

EnergyParams to_energy_params(const CoulombParams& params, double epsilon) {
  if (!(epsilon > 0.0) || !(epsilon < params.mass()))
    throw std::invalid_argument("epsilon must satisfy 0 < epsilon < M for a bound state");
  const double lambda = params.mass() / epsilon;
  const double a = params.alpha();
  return {epsilon, lambda, a * a * lambda * lambda};
}

}  // namespace dkp
