#pragma once

#include <utility>
#include <vector>

#include "dkp/oracle.hpp"
#include "dkp/spectra.hpp"

namespace dkp {

/// Radial equation whose bound states make up a branch, as a function of the trial energy.
///   scalar       scalar-like equation in r
///   jzero        j = 0 equation for f = r E2 in x = eps r
///   heun         first-type main equation in r
///   nonrel-*     decoupled Schroedinger-type channels, energy is the binding energy
/// Throws std::invalid_argument for a quantum number the branch does not admit.
OdeFamily branch_family(Branch branch, double alpha, int j, double mass = 1.0);

/// Closed-form level. For jzero, j must be 0 and n plays the role of N.
EnergyLevel closed_form_level(Branch branch, double alpha, int j, int n);

/// Default trial-energy window for the oracle, in the units of branch_family.
std::pair<double, double> default_bracket(Branch branch, double mass = 1.0);

/// Oracle energy in units of mc^2, comparable to EnergyLevel::e_over_mc2.
double to_e_over_mc2(Branch branch, double epsilon, double mass = 1.0);

ShootingConfig default_shooting(Branch branch, int n, double mass = 1.0);
FdConfig default_fd(Branch branch, double mass = 1.0);

/// Shooting eigenvalue with node target n, over the default window.
OracleResult shoot_level(Branch branch, double alpha, int j, int n, double mass = 1.0);
/// The k lowest finite-difference levels over the default window.
std::vector<OracleResult> fd_levels(Branch branch, double alpha, int j, int k, double mass = 1.0);

/// Relative deviation |a - b| / |b|.
double relative_deviation(double a, double b) noexcept;

}  // namespace dkp
