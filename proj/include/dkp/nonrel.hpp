#pragma once

#include <array>

#include "dkp/core_params.hpp"
#include "dkp/radial_eqs.hpp"
#include "dkp/series.hpp"
#include "dkp/spectra.hpp"

namespace dkp {

/// B = (Phi + iE)/2, S = (Phi - iE)/2 for each pair; only the first pair exists for parity (-1)^(j+1).
struct BigSmallSplit {
  Parity parity;
  double big1 = 0.0, big2 = 0.0;
  double small1 = 0.0, small2 = 0.0;
};

BigSmallSplit split_big_small(Parity parity, double phi1, double ie1, double phi2 = 0.0, double ie2 = 0.0);
/// Inverse of split_big_small: returns (Phi1, iE1, Phi2, iE2).
std::array<double, 4> merge_big_small(const BigSmallSplit& s);

using Matrix2 = std::array<std::array<double, 2>, 2>;

struct DiagonalizedSystem {
  int j;
  double lambda1;  // j + 1
  double lambda2;  // -j
  Matrix2 transform;  // rows (1, lambda1/(2 nu)), (1, lambda2/(2 nu))
  Matrix2 coupling;   // [[0, nu], [2 nu, 1]]
  int nu_eff_f1;      // j + 1
  int nu_eff_f2;      // j - 1
  double residual;    // max |T K - D T|
};

DiagonalizedSystem diagonalize_coupled(int j);

/// u'' + (2/r) u' + (2M(eps + alpha/r) - j(j+1)/r^2) u = 0.
RadialODE nonrel_big_equation(const CoulombParams& params, double epsilon);
/// Same operator with nu_eff(nu_eff+1) in place of j(j+1).
RadialODE nonrel_diagonal_equation(double alpha, double mass, double epsilon, int nu_eff);

/// -alpha^2 M / (2 (1 + nu_eff + n)^2).
double nonrel_spectrum(double alpha, double mass, int nu_eff, int n);
/// Level of a decoupled channel in units of mc^2. nu_eff follows the branch: j-1, j+1 or j.
EnergyLevel nonrel_level(double alpha, int j, int n, Branch branch);
int nonrel_nu_eff(Branch branch, int j);

/// A = 1 + nu - alpha M / sqrt(-2 eps M), C = 2 nu + 2. Throws for eps >= 0.
KummerParams kummer_reduction(double alpha, double mass, double epsilon, int nu_eff);
/// x^nu e^{-x/2} M(A, C; x) with x = 2 sqrt(-2 eps M) r, with first and second r-derivatives.
/// A within 1e-10 of a non-positive integer is taken as that integer.
SeriesJet kummer_radial_solution(double alpha, double mass, double epsilon, int nu_eff, double r);

/// Residuals of the coupled pair r^2 [Delta] B1 = 2 nu B2, r^2 [Delta] B2 = 2 B2 + 4 nu B1 where
/// Delta = d^2/dr^2 + (2/r) d/dr + 2M(eps + alpha/r) - 2 nu^2/r^2. Each input is (value, d1, d2).
std::array<double, 2> coupled_residual(double alpha, double mass, double epsilon, int j, double r,
                                       const SeriesJet& b1, const SeriesJet& b2);
/// Residuals of the decoupled equations for f = T B: Delta f_i - 2 lambda_i f_i / r^2.
std::array<double, 2> decoupled_residual(double alpha, double mass, double epsilon, int j, double r,
                                         const SeriesJet& f1, const SeriesJet& f2);

}  // namespace dkp
