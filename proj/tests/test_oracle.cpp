#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "dkp/branches.hpp"
#include "dkp/nonrel.hpp"
#include "dkp/oracle.hpp"
#include "dkp/spectra.hpp"

using namespace dkp;

TEST_CASE("shooting reproduces known levels") {
  const OracleResult s = shoot_level(Branch::ScalarLike, 0.1, 1, 0);
  CHECK(std::abs(s.epsilon - 0.99874817) < 1e-8);
  CHECK(s.node_count == 0);
  CHECK(s.match_residual < 1e-6);

  const OracleResult h = shoot_eigenvalue(
      [](double e) { return nonrel_diagonal_equation(0.1, 1.0, e, 1); },
      [] {
        ShootingConfig c;
        c.eps_lo = -0.5;
        c.eps_hi = -1e-6;
        c.node_target = 0;
        return c;
      }());
  CHECK(std::abs(h.epsilon + 0.00125) < 1e-10);

  const OracleResult big = shoot_level(Branch::NonRelBig, 0.1, 1, 0);
  CHECK(big.epsilon == doctest::Approx(-0.00125).epsilon(1e-8));
}

TEST_CASE("node counts follow n") {
  for (int n = 0; n <= 3; ++n) {
    const OracleResult r = shoot_level(Branch::ScalarLike, 0.3, 2, n);
    CHECK(r.node_count == n);
    CHECK(r.epsilon == doctest::Approx(spectrum_scalar_like(0.3, 2, n).e_over_mc2).epsilon(1e-8));
    // the regular solution alone picks up the growing mode a few decay lengths out
    const RadialODE ode = branch_family(Branch::ScalarLike, 0.3, 2)(r.epsilon);
    CHECK(count_nodes(ode, 1e-4, decay_boundary(ode, 8.0, 1e6)) == n);
    CHECK(count_nodes(ode, 1e-4, decay_boundary(ode, 40.0, 1e6)) >= n);
  }
}

TEST_CASE("wavefunction samples") {
  const OracleResult r = shoot_level(Branch::ScalarLike, 0.1, 0, 1);
  const RadialSamples& w = r.wavefunction;
  REQUIRE(w.r.size() == 400);
  double mx = 0.0;
  for (double u : w.u) mx = std::max(mx, std::abs(u));
  CHECK(mx == doctest::Approx(1.0));
  CHECK(std::abs(w.u.back()) < 1e-6);
  for (std::size_t i = 1; i < w.r.size(); ++i) CHECK(w.r[i] > w.r[i - 1]);
}

TEST_CASE("bracket and configuration errors") {
  const OdeFamily fam = branch_family(Branch::ScalarLike, 0.1, 1);
  ShootingConfig c;
  c.eps_lo = 0.5;
  c.eps_hi = 0.9;
  CHECK_THROWS_AS(shoot_eigenvalue(fam, c), BracketError);
  c.node_target = 0;
  CHECK_THROWS_AS(shoot_eigenvalue(fam, c), BracketError);
  ShootingConfig bad = c;
  bad.r_min = 0.0;
  CHECK_THROWS_AS(shoot_eigenvalue(fam, bad), std::invalid_argument);
  bad = c;
  bad.tol_eig = 1e-13;
  CHECK_THROWS_AS(shoot_eigenvalue(fam, bad), std::invalid_argument);
  bad = c;
  bad.r_max = 1e-5;
  CHECK_THROWS_AS(shoot_eigenvalue(fam, bad), std::invalid_argument);

  FdConfig f;
  f.eps_lo = 0.5;
  f.eps_hi = 0.9999;
  f.grid_size = 100;
  CHECK_THROWS_AS(fd_matrix_eigen(fam, f, 1), std::invalid_argument);
  f.grid_size = 400;
  CHECK_THROWS_AS(fd_matrix_eigen(fam, f, 0), std::invalid_argument);
}

TEST_CASE("the first-type main equation has no bound states") {
  CHECK_THROWS_AS(shoot_level(Branch::HeunBranch, 0.1, 1, 0), BracketError);
  CHECK_THROWS_AS(fd_levels(Branch::HeunBranch, 0.1, 1, 1), BracketError);
  CHECK(fd_sturm_count(branch_family(Branch::HeunBranch, 0.1, 1), 1.0 - 1e-6, 1e-6, 4e4, 2000) == 0);
}

TEST_CASE("finite differences agree with shooting") {
  const auto fd = fd_levels(Branch::ScalarLike, 0.1, 1, 3);
  REQUIRE(fd.size() == 3);
  for (int n = 0; n < 3; ++n) {
    const OracleResult s = shoot_level(Branch::ScalarLike, 0.1, 1, n);
    CHECK(relative_deviation(fd[n].epsilon, s.epsilon) < 1e-6);
    CHECK(fd[n].node_count == n);
    CHECK(fd[n].error_estimate < 1e-7);
  }
}

TEST_CASE("finite differences on the hydrogen channel") {
  const auto fd = fd_levels(Branch::NonRelMinus, 0.1, 1, 3);
  REQUIRE(fd.size() == 3);
  for (int n = 0; n < 3; ++n) {
    const double np = n + 1.0;
    CHECK(fd[n].epsilon == doctest::Approx(-0.01 / (2 * np * np)).epsilon(1e-6));
    CHECK(fd[n].node_count == n);
  }
  CHECK(fd_sturm_count(branch_family(Branch::NonRelMinus, 0.1, 1), -0.002, 1e-6, 2e3, 4000) == 1);
}

TEST_CASE("outer boundary placement") {
  const OdeFamily fam = branch_family(Branch::ScalarLike, 0.1, 1);
  ShootingConfig c = default_shooting(Branch::ScalarLike, 0);
  const double base = shoot_eigenvalue(fam, c).epsilon;
  const double kappa = std::sqrt(1.0 - base * base);
  c.r_max = 80.0 / kappa;
  const double doubled = shoot_eigenvalue(fam, c).epsilon;
  CHECK(std::abs(doubled - base) / base < 1e-9);
  CHECK_THROWS_AS(decay_boundary(fam(1.2), 40.0, 1e6), std::invalid_argument);
}

TEST_CASE("regular solution") {
  const RadialODE ode = branch_family(Branch::ScalarLike, 0.1, 1)(0.9);
  const std::vector<double> grid{0.01, 0.1, 1.0};
  const RadialSamples s = regular_solution(ode, grid);
  REQUIRE(s.u.size() == 3);
  // u ~ r^s near the origin
  const double sp = 0.5 * (-1.0 + std::sqrt(9.0 - 4.0 * 0.01));
  CHECK(s.du[0] * 0.01 / s.u[0] == doctest::Approx(sp).epsilon(1e-2));
  const std::vector<double> unsorted{0.5, 0.1};
  CHECK_THROWS_AS(regular_solution(ode, unsorted), std::invalid_argument);
  CHECK_THROWS_AS(regular_solution(ode, std::vector<double>{}), std::invalid_argument);
}
