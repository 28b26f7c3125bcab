#pragma once

#include <vector>

#include "dkp/core_params.hpp"

namespace dkp {

/// Confluent Heun operator
///   y'' + (a + (b+1)/x + (c+1)/(x-1)) y'
///       + ((d + a(b+c+2)/2) x - (a(1+b) - b(1+c) - c - 2h)/2) / (x(x-1)) y = 0.
struct HeunCanonical {
  double a, b, c, d, h;
};

/// Coefficients of the canonical operator.
double heun_p(const HeunCanonical& hc, double x);
double heun_q(const HeunCanonical& hc, double x);

struct HeunMap {
  HeunCanonical canonical;
  double A;  // Phi0 = x^A e^{Bx} f(x)
  double B;
};

/// Throws std::invalid_argument unless Lambda^2 > alpha^2.
HeunMap map_to_heun(const CoulombParams& params, const EnergyParams& energy);

/// Coefficients of the pre-canonical equation for f after peeling x^A e^{Bx} from the
/// x-form of the first-type main equation.
double peeled_p(double A, double B, double x);
double peeled_q(double A, double B, double Lambda2, double x);

/// Taylor coefficients at x = 0 of the solution analytic there, f(0) = 1.
std::vector<double> heun_local_series(const HeunCanonical& hc, int K);

/// d + a (n + (b+c+2)/2)
double polynomial_condition_residual(const HeunCanonical& hc, int n);

struct HeunTail {
  double f_n1;  // |f_{n+1}| / max_{k<=n} |f_k|
  double f_n2;  // |f_{n+2}| / max_{k<=n} |f_k|
};

HeunTail heun_tail_diagnostic(const HeunCanonical& hc, int n);

}  // namespace dkp
