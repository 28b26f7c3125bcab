#pragma once

#include <array>
#include <complex>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "dkp/core_params.hpp"

namespace dkp {

enum class OdeLabel {
  ScalarLikeR,
  JZeroE2,  // E2 equation
  JZeroF,   // f = r E2
  JZeroX,   // f in x = eps r
  MainTypeIR,
  MainTypeIX,
  MainTypeIIR,
  MainTypeIIX,
  MainTypeIIY,
  NonRelBig,
  NonRelDiagonal,
  Generic,
};

const char* to_string(OdeLabel label) noexcept;

enum class SingularityKind { Regular, Irregular, NonPhysical };

struct SingularPoint {
  double location;  // +-infinity allowed
  SingularityKind kind;
};

/// u'' + p u' + q u = 0 on the open interval (domain_lo, domain_hi).
struct RadialODE {
  OdeLabel label = OdeLabel::Generic;
  std::function<double(double)> p;
  std::function<double(double)> q;
  std::vector<SingularPoint> singular_points;
  double domain_lo = 0.0;
  double domain_hi = std::numeric_limits<double>::infinity();
  /// lim q at the far end of the domain; NaN when that end is not an irregular point of Coulomb type.
  double q_infinity = std::numeric_limits<double>::quiet_NaN();

  double residual(double r, double u, double du, double d2u) const { return d2u + p(r) * du + q(r) * u; }
  /// Sum of magnitudes of the three terms, used to normalize residuals.
  double residual_scale(double r, double u, double du, double d2u) const {
    return std::abs(d2u) + std::abs(p(r) * du) + std::abs(q(r) * u);
  }
};

RadialODE build_scalar_like(const CoulombParams& params, double epsilon);
RadialODE build_jzero_e2(const CoulombParams& params, double epsilon);
RadialODE build_jzero_f(const CoulombParams& params, double epsilon);
/// Independent variable x = eps r; only lambda = M/eps enters.
RadialODE build_jzero_x(const CoulombParams& params, double epsilon);
RadialODE build_main_type1(const CoulombParams& params, double epsilon);
RadialODE build_main_type2(const CoulombParams& params, double epsilon);

/// x = -(eps/alpha) r, transcribed coefficients. Accepts MainTypeIR and MainTypeIIR.
RadialODE to_x_variable(const RadialODE& ode, const CoulombParams& params, double epsilon);
/// MainTypeIIX -> transcribed y = 1/x form; MainTypeIIY -> x form by the chain rule.
RadialODE to_y_variable(const RadialODE& ode, const CoulombParams& params, double epsilon);

/// Chain-rule images for a change of variable s = k t (linear) and s = 1/t (reciprocal).
RadialODE linear_rescale(const RadialODE& ode, double k);
RadialODE reciprocal_transform(const RadialODE& ode);

enum class SystemLabel { Parity4, Parity6, JZeroSystem };

struct SystemResidual {
  std::vector<double> residual;
  std::vector<double> scale;  // sum of term magnitudes per equation
  double max_relative() const;
};

/// Real forms of the reduced first-order systems.
///   Parity4: (Phi1, e1, h1, h2) with e1 = i E1, h1 = i H1, h2 = i H2.
///   Parity6: (Phi0, phi1, phi2, E1, E2, H1) with phi1 = -i Phi1, phi2 = -i Phi2.
///   JZeroSystem:    (phi0, phi2, E2) with phi0 = Phi0, phi2 = -i Phi2 and H2 = 0.
class FirstOrderSystem {
 public:
  FirstOrderSystem(SystemLabel label, const CoulombParams& params, double epsilon);
  SystemLabel label() const noexcept { return label_; }
  int size() const noexcept;
  SystemResidual evaluate(double r, std::span<const double> values, std::span<const double> derivs) const;

 private:
  SystemLabel label_;
  double alpha_, mass_, nu_, eps_;
};

SystemResidual residual_system(const FirstOrderSystem& system, double r, std::span<const double> values,
                               std::span<const double> derivs);

using Complex = std::complex<double>;
using FullState = std::array<Complex, 10>;  // ordered as Component: Phi0..Phi3, E1..E3, H1..H3

/// The ten radial equations before any parity tie, left-hand sides minus right-hand sides.
FullState full_radial_residual(const CoulombParams& params, double epsilon, double r, const FullState& values,
                               const FullState& derivs);

}  // namespace dkp
