#include "dkp/field_reconstruct.hpp"

#include <algorithm>
#include <boost/math/differentiation/autodiff.hpp>
#include <cmath>
#include <stdexcept>

namespace dkp {
namespace {

namespace ad = boost::math::differentiation;
using Jet = ad::autodiff_fvar<double, 1>;

template <class T>
struct Fields {
  T e1, e2, phi1, phi2, h1;
};

template <class T>
Fields<T> aux_fields(const T& r, const T& f, const T& df, double alpha, double eps, double M, double nu) {
  const T w = eps + alpha / r;
  Fields<T> out;
  out.e2 = -2.0 * M * r * f;
  out.e1 = M * r / (2.0 * nu) * (5.0 * f + 2.0 * r * df);
  out.phi1 = -(nu / r * f - 5.0 * M * M / (2.0 * nu) * r * f - r * r * M * M / nu * df) / w;
  out.phi2 = (df - 2.0 * M * M * r * f) / w;
  out.h1 = -(M * r / (2.0 * nu)) / w * (df + 2.0 * r * (w * w - M * M) * f);
  return out;
}

void check(const FieldProfile& p) {
  if (p.phi1.size() != p.r.size()) throw std::invalid_argument("field profile is not populated");
}

}  // namespace

FieldProfile reconstruct(std::span<const double> r, std::span<const double> phi0, std::span<const double> dphi0,
                         const CoulombParams& params, double epsilon) {
  if (params.j() < 1) throw std::invalid_argument("reconstruct: j >= 1 is required (nu = 0 otherwise)");
  if (r.size() != phi0.size() || r.size() != dphi0.size())
    throw std::invalid_argument("reconstruct: sample arrays differ in length");
  const double alpha = params.alpha(), M = params.mass(), nu = params.nu_radial();
  const RadialODE ode = build_main_type1(params, epsilon);
  FieldProfile p;
  const std::size_t n = r.size();
  p.r.assign(r.begin(), r.end());
  p.phi0.assign(phi0.begin(), phi0.end());
  p.dphi0.assign(dphi0.begin(), dphi0.end());
  for (auto* v : {&p.d2phi0, &p.e1, &p.e2, &p.phi1, &p.phi2, &p.h1, &p.de1, &p.de2, &p.dphi1, &p.dphi2, &p.dh1})
    v->resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double ri = r[i];
    if (!(ri > 0.0)) throw std::invalid_argument("reconstruct: grid must exclude r <= 0");
    if (epsilon + alpha / ri == 0.0) throw std::invalid_argument("reconstruct: eps + alpha/r vanishes on the grid");
    const double d2 = -ode.p(ri) * dphi0[i] - ode.q(ri) * phi0[i];
    p.d2phi0[i] = d2;
    const Jet rr = ad::make_fvar<double, 1>(ri);
    const Jet f = phi0[i] + dphi0[i] * (rr - ri);
    const Jet df = dphi0[i] + d2 * (rr - ri);
    const auto fl = aux_fields<Jet>(rr, f, df, alpha, epsilon, M, nu);
    p.e1[i] = fl.e1.derivative(0);
    p.e2[i] = fl.e2.derivative(0);
    p.phi1[i] = fl.phi1.derivative(0);
    p.phi2[i] = fl.phi2.derivative(0);
    p.h1[i] = fl.h1.derivative(0);
    p.de1[i] = fl.e1.derivative(1);
    p.de2[i] = fl.e2.derivative(1);
    p.dphi1[i] = fl.phi1.derivative(1);
    p.dphi2[i] = fl.phi2.derivative(1);
    p.dh1[i] = fl.h1.derivative(1);
  }
  return p;
}

double ResidualProfile::max_relative() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < value.size(); ++i)
    if (scale[i] > 0.0) worst = std::max(worst, std::abs(value[i]) / scale[i]);
  return worst;
}

double ResidualProfile::max_abs() const {
  double worst = 0.0;
  for (double v : value) worst = std::max(worst, std::abs(v));
  return worst;
}

ResidualProfile h1_dual_residual(const FieldProfile& p, const CoulombParams& params, double /*epsilon*/) {
  check(p);
  const double M = params.mass(), nu = params.nu_radial();
  ResidualProfile out;
  for (std::size_t i = 0; i < p.r.size(); ++i) {
    const double r = p.r[i];
    const double second_order = (p.dphi1[i] + p.phi1[i] / r + nu * p.phi2[i] / r) / M;
    out.value.push_back(second_order - p.h1[i]);
    out.scale.push_back(std::abs(second_order) + std::abs(p.h1[i]));
  }
  return out;
}

ResidualProfile lorentz_residual(const FieldProfile& p, const CoulombParams& params, double epsilon) {
  check(p);
  const double alpha = params.alpha(), M = params.mass(), nu = params.nu_radial();
  ResidualProfile out;
  for (std::size_t i = 0; i < p.r.size(); ++i) {
    const double r = p.r[i];
    const double t[5] = {-epsilon * p.phi0[i], -p.dphi2[i], -2.0 * p.phi2[i] / r, -2.0 * nu * p.phi1[i] / r,
                         -alpha / (2.0 * M * r * r) * p.e2[i]};
    double s = 0.0, m = 0.0;
    for (double x : t) {
      s += x;
      m += std::abs(x);
    }
    out.value.push_back(s);
    out.scale.push_back(m);
  }
  return out;
}

std::vector<ResidualProfile> system_residuals(const FieldProfile& p, const CoulombParams& params, double epsilon) {
  check(p);
  const FirstOrderSystem sys(SystemLabel::Parity6, params, epsilon);
  std::vector<ResidualProfile> out(6);
  for (std::size_t i = 0; i < p.r.size(); ++i) {
    const double v[6] = {p.phi0[i], p.phi1[i], p.phi2[i], p.e1[i], p.e2[i], p.h1[i]};
    const double d[6] = {p.dphi0[i], p.dphi1[i], p.dphi2[i], p.de1[i], p.de2[i], p.dh1[i]};
    const SystemResidual res = sys.evaluate(p.r[i], v, d);
    for (int k = 0; k < 6; ++k) {
      out[k].value.push_back(res.residual[k]);
      out[k].scale.push_back(res.scale[k]);
    }
  }
  return out;
}

double e2_identity_deviation(const FieldProfile& p, const CoulombParams& params) {
  check(p);
  double worst = 0.0;
  for (std::size_t i = 0; i < p.r.size(); ++i) {
    const double expect = -2.0 * params.mass() * p.r[i] * p.phi0[i];
    if (expect == 0.0) {
      worst = std::max(worst, std::abs(p.e2[i]));
      continue;
    }
    worst = std::max(worst, std::abs(p.e2[i] / expect - 1.0));
  }
  return worst;
}

Complex lorentz_residual_general(const CoulombParams& params, double epsilon, double r, const FullState& v,
                                 const FullState& d) {
  const Complex I(0.0, 1.0);
  const double nu = params.nu_radial();
  return -I * epsilon * v[0] - (d[2] + 2.0 * v[2] / r) - nu / r * (v[1] + v[3]) -
         I * params.alpha() / (2.0 * params.mass() * r * r) * v[5];
}

}  // namespace dkp
