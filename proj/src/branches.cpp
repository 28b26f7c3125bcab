#include "dkp/branches.hpp"

#include <cmath>
#include <stdexcept>

#include "dkp/nonrel.hpp"
#include "dkp/radial_eqs.hpp"

namespace dkp {
namespace {

void require_j(Branch branch, int j) {
  switch (branch) {
    case Branch::JZero:
      if (j != 0) throw std::invalid_argument("jzero branch requires j = 0");
      break;
    case Branch::HeunBranch:
      if (j < 1) throw std::invalid_argument("heun branch requires j >= 1");
      break;
    case Branch::ScalarLike:
      if (j < 0) throw std::invalid_argument("scalar branch requires j >= 0");
      break;
    default:
      nonrel_nu_eff(branch, j);
  }
}

}  // namespace

OdeFamily branch_family(Branch branch, double alpha, int j, double mass) {
  require_j(branch, j);
  switch (branch) {
    case Branch::ScalarLike: {
      const CoulombParams p(alpha, j, Parity::MinusToJPlus1, mass);
      return [p](double eps) { return build_scalar_like(p, eps); };
    }
    case Branch::JZero: {
      const CoulombParams p(alpha, 0, Parity::MinusToJPlus1, mass);
      return [p](double eps) { return build_jzero_x(p, eps); };
    }
    case Branch::HeunBranch: {
      const CoulombParams p(alpha, j, Parity::MinusToJ, mass);
      return [p](double eps) { return build_main_type1(p, eps); };
    }
    case Branch::NonRelBig: {
      const CoulombParams p(alpha, j, Parity::MinusToJPlus1, mass);
      return [p](double eps) { return nonrel_big_equation(p, eps); };
    }
    default: {
      const int nu = nonrel_nu_eff(branch, j);
      return [=](double eps) { return nonrel_diagonal_equation(alpha, mass, eps, nu); };
    }
  }
}

EnergyLevel closed_form_level(Branch branch, double alpha, int j, int n) {
  require_j(branch, j);
  switch (branch) {
    case Branch::ScalarLike: return spectrum_scalar_like(alpha, j, n);
    case Branch::JZero: return spectrum_jzero(alpha, n);
    case Branch::HeunBranch: return spectrum_heun(alpha, j, n);
    default:
      if (n < 0) throw std::invalid_argument("n must be non-negative");
      return nonrel_level(alpha, j, n, branch);
  }
}

std::pair<double, double> default_bracket(Branch branch, double mass) {
  if (is_relativistic(branch)) return {0.05 * mass, mass * (1.0 - 1e-6)};
  return {-mass, -1e-6 * mass};
}

double to_e_over_mc2(Branch, double epsilon, double mass) { return epsilon / mass; }

ShootingConfig default_shooting(Branch branch, int n, double mass) {
  ShootingConfig c;
  std::tie(c.eps_lo, c.eps_hi) = default_bracket(branch, mass);
  c.node_target = n;
  return c;
}

FdConfig default_fd(Branch branch, double mass) {
  FdConfig c;
  std::tie(c.eps_lo, c.eps_hi) = default_bracket(branch, mass);
  return c;
}

OracleResult shoot_level(Branch branch, double alpha, int j, int n, double mass) {
  if (n < 0) throw std::invalid_argument("n must be non-negative");
  return shoot_eigenvalue(branch_family(branch, alpha, j, mass), default_shooting(branch, n, mass));
}

std::vector<OracleResult> fd_levels(Branch branch, double alpha, int j, int k, double mass) {
  return fd_matrix_eigen(branch_family(branch, alpha, j, mass), default_fd(branch, mass), k);
}

double relative_deviation(double a, double b) noexcept { return std::abs(a - b) / std::abs(b); }

}  // namespace dkp
