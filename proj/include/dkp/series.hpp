#pragma once

#include <optional>
#include <span>
#include <vector>

#include "dkp/core_params.hpp"
#include "dkp/radial_eqs.hpp"

namespace dkp {

/// Neumaier compensated summation.
class CompensatedSum {
 public:
  void add(double x) noexcept;
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct SeriesJet {
  double value;
  double d1;
  double d2;
};

/// Sum c_k x^k together with its first two derivatives.
SeriesJet evaluate_power_series(std::span<const double> coeffs, double x);

struct SeriesSolution {
  double exponent_a = 0.0;
  double scale_b = 0.0;
  std::vector<double> coeffs;  // coeffs[0] == 1
  std::optional<int> terminated_at;
  /// |C_{N+1}| / max_{k<=N} |C_k| before snapping, when terminated_at is set.
  double termination_ratio = 1.0;
  OdeLabel label = OdeLabel::Generic;
};

struct JZeroIndices {
  double a;
  double b;
};

/// Upper-sign exponents of f = x^a e^{-bx} F for the j = 0 equation in x = eps r.
/// lambda = M/eps > 1. Throws std::domain_error for alpha >= 3/2.
JZeroIndices jzero_indices(double alpha, double lambda);

/// Coefficients of F from C_{n+1}(n+1)(n+2a) = 2[nb - (alpha - ab)] C_n, C_0 = 1.
SeriesSolution jzero_recurrence(double alpha, double a, double b, int K);

/// |C_{N+1}| / max_{k<=N} |C_k| from the raw recurrence, without termination snapping.
double jzero_tail_ratio(double alpha, double a, double b, int N);

/// Evaluates f(x) = x^a e^{-bx} F(x) and its derivatives from a series solution.
SeriesJet evaluate_peeled(const SeriesSolution& s, double x);

inline constexpr double kTerminationTolerance = 1e-10;

struct KummerParams {
  double A;
  double C;
};

/// M(A, C; x) = sum (A)_k/(C)_k x^k/k!, x >= 0. Exact polynomial when A is a non-positive integer.
double kummer_eval(const KummerParams& params, double x, int max_terms = 2000);
/// d/dx M(A, C; x) = (A/C) M(A+1, C+1; x).
double kummer_eval_prime(const KummerParams& params, double x, int max_terms = 2000);

struct FrobeniusIndices {
  double minus;
  double plus;
};

struct LocalCoefficients {
  double p0, p1;  // r p(r) = p0 + p1 r + ...
  double q0, q1;  // r^2 q(r) = q0 + q1 r + ...
};

/// Limits of r p and r^2 q at r -> 0+ by polynomial extrapolation. Throws std::domain_error when
/// the origin is not a regular singular point of the ODE.
LocalCoefficients local_coefficients(const RadialODE& ode, double scale = 1e-5);

/// Roots of s(s-1) + p0 s + q0 = 0 extracted numerically from the ODE.
FrobeniusIndices frobenius_indices(const RadialODE& ode);

/// Second coefficient of u = r^s (1 + c1 r + ...).
double frobenius_c1(const LocalCoefficients& lc, double s);

FrobeniusIndices scalar_like_indices(double alpha, int j);
FrobeniusIndices main_type1_indices(double alpha, double nu);
FrobeniusIndices jzero_f_indices(double alpha);

}  // namespace dkp
