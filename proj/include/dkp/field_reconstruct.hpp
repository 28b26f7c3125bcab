#pragma once

#include <span>
#include <vector>

#include "dkp/core_params.hpp"
#include "dkp/radial_eqs.hpp"

namespace dkp {

/// Six real radial amplitudes of the parity (-1)^j sector, sampled on a grid.
/// phi1 = -i Phi1 and phi2 = -i Phi2; E1, E2, H1 are stored as they stand.
struct FieldProfile {
  std::vector<double> r;
  std::vector<double> phi0, dphi0, d2phi0;
  std::vector<double> e1, e2, phi1, phi2, h1;
  std::vector<double> de1, de2, dphi1, dphi2, dh1;
};

/// Fills every component from the main function. Phi0'' is taken from the first-type main
/// equation at the given energy. Throws for j = 0.
FieldProfile reconstruct(std::span<const double> r, std::span<const double> phi0, std::span<const double> dphi0,
                         const CoulombParams& params, double epsilon);

struct ResidualProfile {
  std::vector<double> value;
  std::vector<double> scale;
  double max_relative() const;
  double max_abs() const;
};

/// H1 from the second-order representation minus H1 as stored (the first-order one).
ResidualProfile h1_dual_residual(const FieldProfile& profile, const CoulombParams& params, double epsilon);

/// -eps Phi0 - (d/dr + 2/r) phi2 - 2 nu phi1 / r - alpha E2 / (2 M r^2), i.e. the radial Lorentz
/// condition of the (-1)^j sector divided by i.
ResidualProfile lorentz_residual(const FieldProfile& profile, const CoulombParams& params, double epsilon);

/// Six residual profiles of the first-order (-1)^j system evaluated on the reconstructed fields.
std::vector<ResidualProfile> system_residuals(const FieldProfile& profile, const CoulombParams& params,
                                              double epsilon);

/// E2 / (-2 M r Phi0) - 1 pointwise, skipping nodes of Phi0.
double e2_identity_deviation(const FieldProfile& profile, const CoulombParams& params);

/// Radial Lorentz condition before any parity tie, on the full ten-component state.
Complex lorentz_residual_general(const CoulombParams& params, double epsilon, double r, const FullState& values,
                                 const FullState& derivs);

}  // namespace dkp
