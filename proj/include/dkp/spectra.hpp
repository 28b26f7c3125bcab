#pragma once

#include <string>

namespace dkp {

enum class Branch {
  ScalarLike,   // parity (-1)^(j+1), Klein-Gordon-like tower
  JZero,        // j = 0
  HeunBranch,   // parity (-1)^j, first-type main function
  NonRelMinus,  // decoupled channel with nu_eff = j - 1
  NonRelPlus,   // decoupled channel with nu_eff = j + 1
  NonRelBig,    // big-component equation of parity (-1)^(j+1), nu_eff = j
};

const char* to_string(Branch b) noexcept;
/// Accepts the CLI spellings: scalar, jzero, heun, nonrel-minus, nonrel-plus, nonrel-big.
Branch parse_branch(const std::string& name);
bool is_relativistic(Branch b) noexcept;

enum class Provenance { ClosedForm, Oracle };

struct EnergyLevel {
  Branch branch;
  int n;
  int j;
  double alpha;
  /// E/mc^2 for relativistic branches, binding energy eps'/mc^2 (< 0) otherwise.
  double e_over_mc2;
  double n_effective;
  Provenance provenance = Provenance::ClosedForm;
};

EnergyLevel spectrum_scalar_like(double alpha, int j, int n);
EnergyLevel spectrum_jzero(double alpha, int N);
EnergyLevel spectrum_heun(double alpha, int j, int n);

/// Physical root E/mc^2 of Lambda^4/(Lambda^2 - alpha^2) = N^2 for arbitrary real N.
double heun_energy_from_n_effective(double alpha, double N);
/// |Lambda^4/(Lambda^2 - alpha^2) - N^2| / N^2 with Lambda^2 = alpha^2 / e^2.
double heun_quartic_residual(double alpha, double N, double e_over_mc2);

/// -alpha^2 / (2 N_eff^2).
double nonrel_limit(const EnergyLevel& level);

}  // namespace dkp
