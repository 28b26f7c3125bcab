#pragma once

#include <string>
#include <vector>

namespace dkp {

/// Spatial parity of a spherical wave with total angular momentum j.
enum class Parity {
  MinusToJPlus1,  ///< P = (-1)^(j+1), four-equation sector
  MinusToJ,       ///< P = (-1)^j, six-equation sector
};

const char* to_string(Parity p) noexcept;

/// Coupling, mass and quantum numbers of one Coulomb problem. Natural units, M = mc/hbar.
class CoulombParams {
 public:
  CoulombParams(double alpha, int j, Parity parity = Parity::MinusToJPlus1, double mass = 1.0);

  double alpha() const noexcept { return alpha_; }
  double mass() const noexcept { return mass_; }
  int j() const noexcept { return j_; }
  Parity parity() const noexcept { return parity_; }

  /// sqrt(j(j+1)/2), the constant of the radial systems.
  double nu_radial() const noexcept;
  /// sqrt(j(j+1)), the constant of the d-function recurrences.
  double nu_angular() const noexcept;

  /// Non-fatal notes about parameter ranges where closed forms turn complex.
  std::vector<std::string> warnings() const;

 private:
  double alpha_;
  double mass_;
  int j_;
  Parity parity_;
};

double derived_nu(const CoulombParams& params) noexcept;

struct EnergyParams {
  double epsilon;  // E/(c hbar)
  double lambda;   // M / epsilon
  double Lambda2;  // alpha^2 lambda^2
};

/// Throws std::invalid_argument unless 0 < epsilon < M.
EnergyParams to_energy_params(const CoulombParams& params, double epsilon);

}  // namespace dkp
