#include "dkp/nonrel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dkp {

BigSmallSplit split_big_small(Parity parity, double phi1, double ie1, double phi2, double ie2) {
  BigSmallSplit s{parity};
  s.big1 = 0.5 * (phi1 + ie1);
  s.small1 = 0.5 * (phi1 - ie1);
  if (parity == Parity::MinusToJ) {
    s.big2 = 0.5 * (phi2 + ie2);
    s.small2 = 0.5 * (phi2 - ie2);
  }
  return s;
}

std::array<double, 4> merge_big_small(const BigSmallSplit& s) {
  return {s.big1 + s.small1, s.big1 - s.small1, s.big2 + s.small2, s.big2 - s.small2};
}

DiagonalizedSystem diagonalize_coupled(int j) {
  if (j < 1) throw std::invalid_argument("diagonalize_coupled: j must be at least 1");
  const double jj = static_cast<double>(j) * (j + 1);
  const double nu = std::sqrt(0.5 * jj);
  DiagonalizedSystem d;
  d.j = j;
  d.lambda1 = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * jj));
  d.lambda2 = 0.5 * (1.0 - std::sqrt(1.0 + 4.0 * jj));
  d.coupling = {{{0.0, nu}, {2.0 * nu, 1.0}}};
  d.transform = {{{1.0, d.lambda1 / (2.0 * nu)}, {1.0, d.lambda2 / (2.0 * nu)}}};
  d.nu_eff_f1 = j + 1;
  d.nu_eff_f2 = j - 1;
  const double lam[2] = {d.lambda1, d.lambda2};
  d.residual = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) {
      double tk = 0.0;
      for (int l = 0; l < 2; ++l) tk += d.transform[i][l] * d.coupling[l][k];
      d.residual = std::max(d.residual, std::abs(tk - lam[i] * d.transform[i][k]));
    }
  return d;
}

RadialODE nonrel_big_equation(const CoulombParams& params, double epsilon) {
  RadialODE ode = nonrel_diagonal_equation(params.alpha(), params.mass(), epsilon, params.j());
  ode.label = OdeLabel::NonRelBig;
  return ode;
}

RadialODE nonrel_diagonal_equation(double alpha, double mass, double epsilon, int nu_eff) {
  if (nu_eff < 0) throw std::invalid_argument("nonrel_diagonal_equation: nu_eff must be non-negative");
  const double l2 = static_cast<double>(nu_eff) * (nu_eff + 1);
  RadialODE ode;
  ode.label = OdeLabel::NonRelDiagonal;
  ode.p = [](double r) { return 2.0 / r; };
  ode.q = [=](double r) { return 2.0 * mass * (epsilon + alpha / r) - l2 / (r * r); };
  ode.singular_points = {{0.0, SingularityKind::Regular},
                         {std::numeric_limits<double>::infinity(), SingularityKind::Irregular}};
  ode.q_infinity = 2.0 * mass * epsilon;
  return ode;
}

double nonrel_spectrum(double alpha, double mass, int nu_eff, int n) {
  if (nu_eff < 0 || n < 0) throw std::invalid_argument("nonrel_spectrum: nu_eff and n must be non-negative");
  const double N = 1.0 + nu_eff + n;
  return -alpha * alpha * mass / (2.0 * N * N);
}

int nonrel_nu_eff(Branch branch, int j) {
  switch (branch) {
    case Branch::NonRelMinus:
      if (j < 1) throw std::invalid_argument("nonrel-minus channel requires j >= 1");
      return j - 1;
    case Branch::NonRelPlus:
      if (j < 1) throw std::invalid_argument("nonrel-plus channel requires j >= 1");
      return j + 1;
    case Branch::NonRelBig:
      if (j < 0) throw std::invalid_argument("nonrel-big channel requires j >= 0");
      return j;
    default:
      throw std::invalid_argument("nonrel_nu_eff: not a non-relativistic branch");
  }
}

EnergyLevel nonrel_level(double alpha, int j, int n, Branch branch) {
  const int nu = nonrel_nu_eff(branch, j);
  return {branch, n, j, alpha, nonrel_spectrum(alpha, 1.0, nu, n), 1.0 + nu + n};
}

KummerParams kummer_reduction(double alpha, double mass, double epsilon, int nu_eff) {
  if (!(epsilon < 0.0)) throw std::domain_error("kummer_reduction: epsilon must be negative");
  return {1.0 + nu_eff - alpha * mass / std::sqrt(-2.0 * epsilon * mass), 2.0 * nu_eff + 2.0};
}

SeriesJet kummer_radial_solution(double alpha, double mass, double epsilon, int nu_eff, double r) {
  KummerParams kp = kummer_reduction(alpha, mass, epsilon, nu_eff);
  // quantized energies reproduce A = -n only to rounding; snap so the polynomial branch is taken
  const double nearest = std::round(kp.A);
  if (nearest <= 0.0 && std::abs(kp.A - nearest) < 1e-10) kp.A = nearest;
  const double k = 2.0 * std::sqrt(-2.0 * epsilon * mass);
  const double x = k * r;
  const double m0 = kummer_eval(kp, x);
  const double m1 = kummer_eval_prime(kp, x);
  const double m2 = kp.A * (kp.A + 1.0) / (kp.C * (kp.C + 1.0)) * kummer_eval({kp.A + 2.0, kp.C + 2.0}, x);
  // g = x^nu e^{-x/2}
  const double g = std::pow(x, nu_eff) * std::exp(-0.5 * x);
  const double l1 = nu_eff / x - 0.5;
  const double g1 = g * l1;
  const double g2 = g * (l1 * l1 - nu_eff / (x * x));
  const double fx = g * m0;
  const double fx1 = g1 * m0 + g * m1;
  const double fx2 = g2 * m0 + 2.0 * g1 * m1 + g * m2;
  return {fx, k * fx1, k * k * fx2};
}

namespace {

double delta(double alpha, double mass, double epsilon, double nu2, double r, const SeriesJet& u) {
  return u.d2 + 2.0 / r * u.d1 + (2.0 * mass * (epsilon + alpha / r) - 2.0 * nu2 / (r * r)) * u.value;
}

}  // namespace

std::array<double, 2> coupled_residual(double alpha, double mass, double epsilon, int j, double r,
                                       const SeriesJet& b1, const SeriesJet& b2) {
  const double nu2 = 0.5 * j * (j + 1.0);
  const double nu = std::sqrt(nu2);
  return {r * r * delta(alpha, mass, epsilon, nu2, r, b1) - 2.0 * nu * b2.value,
          r * r * delta(alpha, mass, epsilon, nu2, r, b2) - 2.0 * b2.value - 4.0 * nu * b1.value};
}

std::array<double, 2> decoupled_residual(double alpha, double mass, double epsilon, int j, double r,
                                         const SeriesJet& f1, const SeriesJet& f2) {
  const DiagonalizedSystem d = diagonalize_coupled(j);
  const double nu2 = 0.5 * j * (j + 1.0);
  return {delta(alpha, mass, epsilon, nu2, r, f1) - 2.0 * d.lambda1 * f1.value / (r * r),
          delta(alpha, mass, epsilon, nu2, r, f2) - 2.0 * d.lambda2 * f2.value / (r * r)};
}

}  // namespace dkp
