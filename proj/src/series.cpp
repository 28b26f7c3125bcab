#include "dkp/series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dkp {

void CompensatedSum::add(double x) noexcept {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x))
    comp_ += (sum_ - t) + x;
  else
    comp_ += (x - t) + sum_;
  sum_ = t;
}

SeriesJet evaluate_power_series(std::span<const double> coeffs, double x) {
  CompensatedSum f, f1, f2;
  double xk = 1.0;  // x^k
  double xk1 = 0.0; // x^(k-1)
  double xk2 = 0.0; // x^(k-2)
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const double c = coeffs[k];
    f.add(c * xk);
    if (k >= 1) f1.add(c * k * xk1);
    if (k >= 2) f2.add(c * k * (k - 1.0) * xk2);
    xk2 = xk1;
    xk1 = xk;
    xk *= x;
  }
  return {f.value(), f1.value(), f2.value()};
}

JZeroIndices jzero_indices(double alpha, double lambda) {
  const double disc = 9.0 - 4.0 * alpha * alpha;
  if (!(disc > 0.0)) throw std::domain_error("jzero_indices: 9 - 4 alpha^2 must be positive (alpha < 3/2)");
  if (!(lambda >= 1.0)) throw std::domain_error("jzero_indices: lambda = M/eps must be at least 1");
  return {0.5 * (1.0 + std::sqrt(disc)), std::sqrt(lambda * lambda - 1.0)};
}

SeriesSolution jzero_recurrence(double alpha, double a, double b, int K) {
  if (K < 1) throw std::invalid_argument("jzero_recurrence: K must be at least 1");
  if (!(a > 0.0)) throw std::invalid_argument("jzero_recurrence: exponent a must be positive");
  SeriesSolution s;
  s.exponent_a = a;
  s.scale_b = b;
  s.label = OdeLabel::JZeroX;
  s.coeffs.assign(K + 1, 0.0);
  s.coeffs[0] = 1.0;
  const double g = alpha - a * b;
  double running_max = 1.0;
  for (int n = 0; n < K; ++n) {
    const double factor = n * b - g;
    const double next = 2.0 * factor * s.coeffs[n] / ((n + 1.0) * (n + 2.0 * a));
    // The factor cancels to rounding level exactly at the quantized energies; a decaying
    // but non-terminating tail never does.
    if (!s.terminated_at && std::abs(factor) <= kTerminationTolerance * (std::abs(n * b) + std::abs(alpha) + std::abs(a * b))) {
      s.terminated_at = n;
      s.termination_ratio = std::abs(next) / running_max;
      break;
    }
    s.coeffs[n + 1] = next;
    running_max = std::max(running_max, std::abs(next));
  }
  return s;
}

double jzero_tail_ratio(double alpha, double a, double b, int N) {
  if (N < 0) throw std::invalid_argument("jzero_tail_ratio: N must be non-negative");
  const double g = alpha - a * b;
  double c = 1.0, running_max = 1.0;
  for (int n = 0; n <= N; ++n) {
    c *= 2.0 * (n * b - g) / ((n + 1.0) * (n + 2.0 * a));
    if (n < N) running_max = std::max(running_max, std::abs(c));
  }
  return std::abs(c) / running_max;
}

SeriesJet evaluate_peeled(const SeriesSolution& s, double x) {
  const SeriesJet F = evaluate_power_series(s.coeffs, x);
  const double a = s.exponent_a, b = s.scale_b;
  const double pre = std::pow(x, a) * std::exp(-b * x);
  const double l1 = a / x - b;  // (log pre)'
  const double l2 = -a / (x * x);
  const double pre1 = pre * l1;
  const double pre2 = pre * (l1 * l1 + l2);
  return {pre * F.value, pre1 * F.value + pre * F.d1, pre2 * F.value + 2.0 * pre1 * F.d1 + pre * F.d2};
}

namespace {

bool is_nonpositive_integer(double c) { return c <= 0.0 && c == std::floor(c); }

}  // namespace

double kummer_eval(const KummerParams& params, double x, int max_terms) {
  const double A = params.A, C = params.C;
  if (is_nonpositive_integer(C)) throw std::domain_error("kummer_eval: C must not be a non-positive integer");
  if (!(x >= 0.0)) throw std::domain_error("kummer_eval: x must be non-negative");
  CompensatedSum sum;
  double term = 1.0;
  sum.add(term);
  const bool polynomial = is_nonpositive_integer(A);
  for (int k = 0; k < max_terms; ++k) {
    if (polynomial && k >= -A) return sum.value();
    term *= (A + k) / (C + k) * x / (k + 1.0);
    sum.add(term);
    if (!polynomial && k > A && std::abs(term) <= 1e-17 * std::abs(sum.value())) return sum.value();
  }
  if (polynomial) return sum.value();
  throw std::runtime_error("kummer_eval: series did not converge within the term budget");
}

double kummer_eval_prime(const KummerParams& params, double x, int max_terms) {
  if (params.A == 0.0) return 0.0;
  return params.A / params.C * kummer_eval({params.A + 1.0, params.C + 1.0}, x, max_terms);
}

LocalCoefficients local_coefficients(const RadialODE& ode, double scale) {
  auto fit = [&](const std::function<double(double)>& g, double h, double& c0, double& c1) {
    const double g1 = g(h), g2 = g(2.0 * h), g3 = g(4.0 * h);
    c0 = (8.0 * g1 - 6.0 * g2 + g3) / 3.0;
    c1 = (-2.0 * g1 + 2.5 * g2 - 0.5 * g3) / h;
  };
  auto rp = [&](double r) { return r * ode.p(r); };
  auto r2q = [&](double r) { return r * r * ode.q(r); };
  LocalCoefficients lc{};
  double p0b, p1b, q0b, q1b;
  fit(rp, scale, lc.p0, lc.p1);
  fit(r2q, scale, lc.q0, lc.q1);
  fit(rp, 0.1 * scale, p0b, p1b);
  fit(r2q, 0.1 * scale, q0b, q1b);
  const bool finite = std::isfinite(lc.p0) && std::isfinite(lc.q0) && std::isfinite(p0b) && std::isfinite(q0b);
  if (!finite || std::abs(lc.p0 - p0b) > 1e-6 * (1.0 + std::abs(lc.p0)) ||
      std::abs(lc.q0 - q0b) > 1e-6 * (1.0 + std::abs(lc.q0)))
    throw std::domain_error("frobenius_indices: origin is an irregular singular point");
  return lc;
}

FrobeniusIndices frobenius_indices(const RadialODE& ode) {
  const LocalCoefficients lc = local_coefficients(ode);
  // s^2 + (p0 - 1) s + q0 = 0
  const double b = lc.p0 - 1.0;
  const double disc = b * b - 4.0 * lc.q0;
  if (disc < 0.0) throw std::domain_error("frobenius_indices: complex indicial roots");
  const double sd = std::sqrt(disc);
  return {0.5 * (-b - sd), 0.5 * (-b + sd)};
}

double frobenius_c1(const LocalCoefficients& lc, double s) {
  const double den = (s + 1.0) * (s + lc.p0) + lc.q0;
  if (std::abs(den) < 1e-14) throw std::domain_error("frobenius_c1: indices differ by one");
  return -(lc.p1 * s + lc.q1) / den;
}

FrobeniusIndices scalar_like_indices(double alpha, int j) {
  const double disc = (j + 0.5) * (j + 0.5) - alpha * alpha;
  if (disc < 0.0) throw std::domain_error("scalar_like_indices: complex indices");
  return {-0.5 - std::sqrt(disc), -0.5 + std::sqrt(disc)};
}

FrobeniusIndices main_type1_indices(double alpha, double nu) {
  const double s = std::sqrt(1.0 + alpha * alpha + 2.0 * nu * nu);
  return {-1.0 - s, -1.0 + s};
}

FrobeniusIndices jzero_f_indices(double alpha) {
  const double disc = 9.0 - 4.0 * alpha * alpha;
  if (disc < 0.0) throw std::domain_error("jzero_f_indices: complex indices");
  return {0.5 * (1.0 - std::sqrt(disc)), 0.5 * (1.0 + std::sqrt(disc))};
}

}  // namespace dkp
