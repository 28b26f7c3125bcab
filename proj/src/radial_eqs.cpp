#include "dkp/radial_eqs.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dkp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sq(double x) { return x * x; }

}  // namespace

const char* to_string(OdeLabel label) noexcept {
  switch (label) {
    case OdeLabel::ScalarLikeR: return "ScalarLike";
    case OdeLabel::JZeroE2: return "JZeroE2";
    case OdeLabel::JZeroF: return "JZeroF";
    case OdeLabel::JZeroX: return "JZeroX";
    case OdeLabel::MainTypeIR: return "MainTypeI";
    case OdeLabel::MainTypeIX: return "MainTypeIX";
    case OdeLabel::MainTypeIIR: return "MainTypeII";
    case OdeLabel::MainTypeIIX: return "MainTypeIIX";
    case OdeLabel::MainTypeIIY: return "MainTypeIIY";
    case OdeLabel::NonRelBig: return "NonRelBig";
    case OdeLabel::NonRelDiagonal: return "NonRelDiagonal";
    case OdeLabel::Generic: return "Generic";
  }
  return "?";
}

RadialODE build_scalar_like(const CoulombParams& params, double epsilon) {
  const double a = params.alpha(), M = params.mass();
  const double l2 = static_cast<double>(params.j()) * (params.j() + 1);
  RadialODE ode;
  ode.label = OdeLabel::ScalarLikeR;
  ode.p = [](double r) { return 2.0 / r; };
  ode.q = [=](double r) { return sq(epsilon + a / r) - M * M - l2 / (r * r); };
  ode.singular_points = {{0.0, SingularityKind::Regular}, {kInf, SingularityKind::Irregular}};
  ode.q_infinity = epsilon * epsilon - M * M;
  return ode;
}

RadialODE build_jzero_e2(const CoulombParams& params, double epsilon) {
  const double a = params.alpha(), M = params.mass();
  RadialODE ode;
  ode.label = OdeLabel::JZeroE2;
  ode.p = [](double r) { return 2.0 / r; };
  ode.q = [=](double r) { return -2.0 / (r * r) + sq(epsilon + a / r) - M * M; };
  ode.singular_points = {{0.0, SingularityKind::Regular}, {kInf, SingularityKind::Irregular}};
  ode.q_infinity = epsilon * epsilon - M * M;
  return ode;
}

RadialODE build_jzero_f(const CoulombParams& params, double epsilon) {
  const double a = params.alpha(), M = params.mass();
  RadialODE ode;
  ode.label = OdeLabel::JZeroF;
  ode.p = [](double) { return 0.0; };
  ode.q = [=](double r) { return epsilon * epsilon - M * M + 2.0 * a * epsilon / r - (2.0 - a * a) / (r * r); };
  ode.singular_points = {{0.0, SingularityKind::Regular}, {kInf, SingularityKind::Irregular}};
  ode.q_infinity = epsilon * epsilon - M * M;
  return ode;
}

RadialODE build_jzero_x(const CoulombParams& params, double epsilon) {
  const double a = params.alpha();
  const double lambda = params.mass() / epsilon;
  RadialODE ode;
  ode.label = OdeLabel::JZeroX;
  ode.p = [](double) { return 0.0; };
  ode.q = [=](double x) { return 1.0 - lambda * lambda + 2.0 * a / x - (2.0 - a * a) / (x * x); };
  ode.singular_points = {{0.0, SingularityKind::Regular}, {kInf, SingularityKind::Irregular}};
  ode.q_infinity = 1.0 - lambda * lambda;
  return ode;
}

RadialODE build_main_type1(const CoulombParams& params, double epsilon) {
  if (params.j() < 1) throw std::invalid_argument("main equation of the first type requires j >= 1");
  const double a = params.alpha(), M = params.mass(), nu = params.nu_radial();
  RadialODE ode;
  ode.label = OdeLabel::MainTypeIR;
  ode.p = [=](double r) { return (3.0 - epsilon / (epsilon + a / r)) / r; };
  ode.q = [=](double r) {
    return epsilon * epsilon - a * a / (r * r) - 3.0 * M * M + 2.0 * M * M * epsilon / (epsilon + a / r) -
           2.0 * nu * nu / (r * r);
  };
  ode.singular_points = {{0.0, SingularityKind::Regular},
                         {-a / epsilon, SingularityKind::NonPhysical},
                         {kInf, SingularityKind::Irregular}};
  ode.q_infinity = epsilon * epsilon - M * M;
  return ode;
}

RadialODE build_main_type2(const CoulombParams& params, double epsilon) {
  if (params.j() < 1) throw std::invalid_argument("main equation of the second type requires j >= 1");
  const double a = params.alpha(), M = params.mass(), nu = params.nu_radial();
  const double nu2 = nu * nu;
  RadialODE ode;
  ode.label = OdeLabel::MainTypeIIR;
  ode.p = [=](double r) { return (6.0 + a / (r * (epsilon + a / r))) / r; };
  ode.q = [=](double r) {
    const double er = epsilon * r + a;
    return epsilon * epsilon - M * M + 2.0 * epsilon * epsilon * a / er - a * nu2 / (std::pow(r, 4) * M * M * er) -
           0.5 * a * (-15.0 + 4.0 * nu2 - 2.0 * a * a) / (r * r * er) -
           epsilon * (-5.0 + 2.0 * nu2 - 3.0 * a * a) / (r * er);
  };
  ode.singular_points = {{0.0, SingularityKind::Irregular},
                         {-a / epsilon, SingularityKind::NonPhysical},
                         {kInf, SingularityKind::Irregular}};
  ode.q_infinity = epsilon * epsilon - M * M;
  return ode;
}

RadialODE to_x_variable(const RadialODE& ode, const CoulombParams& params, double epsilon) {
  const double a = params.alpha(), nu = params.nu_radial();
  const double lambda = params.mass() / epsilon;
  const double L2 = a * a * lambda * lambda;
  const double nu2 = nu * nu;
  RadialODE out;
  out.domain_lo = -kInf;
  out.domain_hi = 0.0;
  out.singular_points = {{0.0, SingularityKind::Regular},
                         {1.0, SingularityKind::NonPhysical},
                         {-kInf, SingularityKind::Irregular}};
  if (ode.label == OdeLabel::MainTypeIR) {
    out.label = OdeLabel::MainTypeIX;
    out.p = [](double x) { return 3.0 / x - 1.0 / (x - 1.0); };
    out.q = [=](double x) { return a * a - L2 - (a * a + 2.0 * nu2) / (x * x) + 2.0 * L2 / (x - 1.0); };
    out.q_infinity = a * a - L2;
  } else if (ode.label == OdeLabel::MainTypeIIR) {
    out.label = OdeLabel::MainTypeIIX;
    out.singular_points[0].kind = SingularityKind::Irregular;
    out.p = [](double x) { return (6.0 - x / (x - 1.0)) / x; };
    out.q = [=](double x) {
      const double xm = x - 1.0;
      return (1.0 - lambda * lambda) * a * a - 2.0 * a * a / xm + nu2 / (a * a * lambda * lambda * std::pow(x, 4) * xm) +
             (-15.0 + 4.0 * nu2 - 2.0 * a * a) / (2.0 * x * x * xm) - (5.0 + 2.0 * nu2 - 3.0 * a * a) / (x * xm);
    };
    out.q_infinity = (1.0 - lambda * lambda) * a * a;
  } else {
    throw std::invalid_argument("to_x_variable: only the main equations carry an x form");
  }
  return out;
}

RadialODE to_y_variable(const RadialODE& ode, const CoulombParams& params, double epsilon) {
  if (ode.label == OdeLabel::MainTypeIIY) {
    RadialODE out = reciprocal_transform(ode);
    out.label = OdeLabel::MainTypeIIX;
    out.domain_lo = -kInf;
    out.domain_hi = 0.0;
    out.q_infinity = to_x_variable(build_main_type2(params, epsilon), params, epsilon).q_infinity;
    return out;
  }
  if (ode.label != OdeLabel::MainTypeIIX)
    throw std::invalid_argument("to_y_variable: expects the x or y form of the second-type equation");
  const double a = params.alpha(), nu = params.nu_radial();
  const double lambda = params.mass() / epsilon;
  const double nu2 = nu * nu;
  RadialODE out;
  out.label = OdeLabel::MainTypeIIY;
  out.domain_lo = -kInf;
  out.domain_hi = 0.0;
  out.singular_points = {{0.0, SingularityKind::Irregular},
                         {1.0, SingularityKind::NonPhysical},
                         {-kInf, SingularityKind::Irregular}};
  out.p = [](double y) { return (4.0 * y - 3.0) / (y * (1.0 - y)); };
  out.q = [=](double y) {
    const double ym = 1.0 - y;
    return (1.0 - lambda * lambda) * a * a / std::pow(y, 4) - 2.0 * a * a / (std::pow(y, 3) * ym) +
           nu2 * y / (a * a * lambda * lambda * ym) - (15.0 - 4.0 * nu2 + 2.0 * a * a) / (2.0 * y * ym) -
           (5.0 + 2.0 * nu2 - 3.0 * a * a) / (y * y * ym);
  };
  return out;
}

RadialODE linear_rescale(const RadialODE& ode, double k) {
  if (k == 0.0) throw std::invalid_argument("linear_rescale: zero scale");
  RadialODE out;
  out.label = OdeLabel::Generic;
  auto p = ode.p;
  auto q = ode.q;
  out.p = [=](double t) { return k * p(k * t); };
  out.q = [=](double t) { return k * k * q(k * t); };
  for (auto sp : ode.singular_points) out.singular_points.push_back({sp.location / k, sp.kind});
  out.domain_lo = std::min(ode.domain_lo / k, ode.domain_hi / k);
  out.domain_hi = std::max(ode.domain_lo / k, ode.domain_hi / k);
  out.q_infinity = k * k * ode.q_infinity;
  return out;
}

RadialODE reciprocal_transform(const RadialODE& ode) {
  RadialODE out;
  out.label = OdeLabel::Generic;
  auto p = ode.p;
  auto q = ode.q;
  out.p = [=](double t) { return 2.0 / t - p(1.0 / t) / (t * t); };
  out.q = [=](double t) { return q(1.0 / t) / std::pow(t, 4); };
  for (auto sp : ode.singular_points) {
    const double loc = std::isinf(sp.location) ? 0.0 : (sp.location == 0.0 ? kInf : 1.0 / sp.location);
    out.singular_points.push_back({loc, sp.kind});
  }
  out.domain_lo = ode.domain_lo;
  out.domain_hi = ode.domain_hi;
  return out;
}

double SystemResidual::max_relative() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < residual.size(); ++i)
    if (scale[i] > 0.0) worst = std::max(worst, std::abs(residual[i]) / scale[i]);
  return worst;
}

FirstOrderSystem::FirstOrderSystem(SystemLabel label, const CoulombParams& params, double epsilon)
    : label_(label), alpha_(params.alpha()), mass_(params.mass()), nu_(params.nu_radial()), eps_(epsilon) {}

int FirstOrderSystem::size() const noexcept {
  switch (label_) {
    case SystemLabel::Parity4: return 4;
    case SystemLabel::Parity6: return 6;
    case SystemLabel::JZeroSystem: return 3;
  }
  return 0;
}

SystemResidual FirstOrderSystem::evaluate(double r, std::span<const double> v, std::span<const double> d) const {
  if (!(r > 0.0)) throw std::invalid_argument("residual_system: r must be positive");
  const std::size_t n = static_cast<std::size_t>(size());
  if (v.size() != n || d.size() != n) throw std::invalid_argument("residual_system: component count mismatch");
  const double w = eps_ + alpha_ / r, M = mass_, nu = nu_;
  SystemResidual out;
  auto push = [&out](std::initializer_list<double> terms) {
    double s = 0.0, m = 0.0;
    for (double t : terms) {
      s += t;
      m += std::abs(t);
    }
    out.residual.push_back(s);
    out.scale.push_back(m);
  };
  switch (label_) {
    case SystemLabel::Parity4: {
      const double Phi1 = v[0], e1 = v[1], h1 = v[2], h2 = v[3];
      push({w * e1, d[2], h1 / r, nu * h2 / r, -M * Phi1});
      push({w * Phi1, -M * e1});
      push({d[0], Phi1 / r, -M * h1});
      push({2.0 * nu * Phi1 / r, M * h2});
      break;
    }
    case SystemLabel::Parity6: {
      const double Phi0 = v[0], phi1 = v[1], phi2 = v[2], E1 = v[3], E2 = v[4], H1 = v[5];
      push({d[4], 2.0 * E2 / r, 2.0 * nu * E1 / r, M * Phi0});
      push({w * E1, d[5], H1 / r, -M * phi1});
      push({w * E2, -2.0 * nu * H1 / r, -M * phi2});
      push({w * phi1, nu * Phi0 / r, -M * E1});
      push({-w * phi2, d[0], M * E2});
      push({-d[1], -phi1 / r, -nu * phi2 / r, M * H1});
      break;
    }
    case SystemLabel::JZeroSystem: {
      const double phi0 = v[0], phi2 = v[1], E2 = v[2];
      push({-d[2], -2.0 * E2 / r, -M * phi0});
      push({w * E2, -M * phi2});
      push({w * phi2, -d[0], -M * E2});
      break;
    }
  }
  return out;
}

SystemResidual residual_system(const FirstOrderSystem& system, double r, std::span<const double> values,
                               std::span<const double> derivs) {
  return system.evaluate(r, values, derivs);
}

FullState full_radial_residual(const CoulombParams& params, double epsilon, double r, const FullState& v,
                               const FullState& d) {
  const Complex I(0.0, 1.0);
  const double w = epsilon + params.alpha() / r, M = params.mass(), nu = params.nu_radial();
  const Complex &P0 = v[0], &P1 = v[1], &P2 = v[2], &P3 = v[3];
  const Complex &E1 = v[4], &E2 = v[5], &E3 = v[6];
  const Complex &H1 = v[7], &H2 = v[8], &H3 = v[9];
  FullState out;
  out[0] = -(d[5] + 2.0 * E2 / r) - nu / r * (E1 + E3) - M * P0;
  out[1] = I * w * E1 + I * (d[7] + H1 / r) + I * nu / r * H2 - M * P1;
  out[2] = I * w * E2 - I * nu / r * (H1 - H3) - M * P2;
  out[3] = I * w * E3 - I * (d[9] + H3 / r) - I * nu / r * H2 - M * P3;
  out[4] = -I * w * P1 + nu / r * P0 - M * E1;
  out[5] = -I * w * P2 - d[0] - M * E2;
  out[6] = -I * w * P3 + nu / r * P0 - M * E3;
  out[7] = -I * (d[1] + P1 / r) - I * nu / r * P2 - M * H1;
  out[8] = I * nu / r * (P1 - P3) - M * H2;
  out[9] = I * (d[3] + P3 / r) + I * nu / r * P2 - M * H3;
  return out;
}

}  // namespace dkp
