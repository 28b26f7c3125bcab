#pragma once

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "dkp/radial_eqs.hpp"

namespace dkp {

using OdeFamily = std::function<RadialODE(double)>;

class BracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IntegrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ShootingConfig {
  double r_min = 1e-4;
  /// Fixed outer boundary; 0 selects decay_lengths / sqrt(-q_infinity) at each trial energy.
  double r_max = 0.0;
  double r_max_cap = 1e6;
  double decay_lengths = 40.0;
  double tol_ode = 1e-11;
  /// Relative width of the final energy bracket.
  double tol_eig = 1e-10;
  double eps_lo = 0.0;
  double eps_hi = 0.0;
  std::optional<int> node_target;
  int samples = 400;
};

struct RadialSamples {
  std::vector<double> r, u, du;
};

struct OracleResult {
  double epsilon = 0.0;
  int node_count = 0;
  double match_residual = 0.0;
  double error_estimate = 0.0;
  RadialSamples wavefunction;
};

/// Regular Frobenius launch at r_min, decaying launch at r_max, Wronskian match at the outer
/// turning point. With node_target set, the bracket is first narrowed by node count.
OracleResult shoot_eigenvalue(const OdeFamily& family, const ShootingConfig& config);

/// Nodes of the regular solution on (r_min, r_max) at fixed energy.
int count_nodes(const RadialODE& ode, double r_min, double r_max, double tol = 1e-11);

/// Regular solution (u, u') on an increasing grid, launched with u(r_min) = 1 + c1 r_min.
RadialSamples regular_solution(const RadialODE& ode, std::span<const double> r_grid, double r_min = 1e-4,
                               double tol = 1e-11);

/// Outer boundary used for an ODE: decay_lengths / sqrt(-q_infinity), capped.
double decay_boundary(const RadialODE& ode, double decay_lengths, double cap);

struct FdConfig {
  /// Intervals of the coarsest grid; two refinements by 2 follow.
  int grid_size = 1200;
  double r_min = 1e-6;
  double r_max = 0.0;
  double r_max_cap = 1e6;
  double decay_lengths = 40.0;
  double eps_lo = 0.0;
  double eps_hi = 0.0;
  /// Relative bound on the extrapolation error estimate before the result is rejected.
  double max_extrapolation_error = 1e-7;
  int samples = 400;
};

/// Three-point Liouville-form discretization on a uniform grid in t = ln r with a Frobenius
/// Robin condition at the inner end; eigenvalues located by Sturm counts and extrapolated over
/// three grids. Returns the k lowest levels in the bracket; throws BracketError if fewer exist.
std::vector<OracleResult> fd_matrix_eigen(const OdeFamily& family, const FdConfig& config, int k_lowest);

/// Number of discrete Dirichlet levels below epsilon on a fixed grid.
int fd_sturm_count(const OdeFamily& family, double epsilon, double r_min, double r_max, int intervals);

}  // namespace dkp
