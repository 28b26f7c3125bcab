#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dkp/nonrel.hpp"
#include "dkp/spectra.hpp"

using namespace dkp;

TEST_CASE("big and small components") {
  const BigSmallSplit s = split_big_small(Parity::MinusToJ, 0.7, -0.3, 1.1, 0.4);
  const auto back = merge_big_small(s);
  CHECK(back[0] == doctest::Approx(0.7));
  CHECK(back[1] == doctest::Approx(-0.3));
  CHECK(back[2] == doctest::Approx(1.1));
  CHECK(back[3] == doctest::Approx(0.4));
  const BigSmallSplit t = split_big_small(Parity::MinusToJPlus1, 0.7, -0.3, 1.1, 0.4);
  CHECK(t.big1 == doctest::Approx(0.2));
  CHECK(t.small1 == doctest::Approx(0.5));
  CHECK(t.big2 == 0.0);
  CHECK(t.small2 == 0.0);
}

TEST_CASE("coupled-channel diagonalization") {
  const DiagonalizedSystem d1 = diagonalize_coupled(1);
  CHECK(d1.lambda1 == 2.0);
  CHECK(d1.lambda2 == -1.0);
  CHECK(d1.coupling[0][1] == doctest::Approx(1.0));
  CHECK(d1.coupling[1][0] == doctest::Approx(2.0));
  CHECK(d1.transform[0][1] == doctest::Approx(1.0));
  const DiagonalizedSystem d2 = diagonalize_coupled(2);
  CHECK(d2.lambda1 == 3.0);
  CHECK(d2.lambda2 == -2.0);
  CHECK_THROWS_AS(diagonalize_coupled(0), std::invalid_argument);

  for (int j = 1; j <= 20; ++j) {
    const DiagonalizedSystem d = diagonalize_coupled(j);
    CHECK(d.residual < 1e-13);
    CHECK(d.lambda1 == j + 1);
    CHECK(d.lambda2 == -j);
    CHECK(d.nu_eff_f1 == j + 1);
    CHECK(d.nu_eff_f2 == j - 1);
    const double nu2 = 0.5 * j * (j + 1);
    CHECK(2 * nu2 + 2 * d.lambda1 == double((j + 1) * (j + 2)));
    CHECK(2 * nu2 + 2 * d.lambda2 == double(j * (j - 1)));
    CHECK(d.nu_eff_f1 * (d.nu_eff_f1 + 1) == (j + 1) * (j + 2));
    CHECK(d.nu_eff_f2 * (d.nu_eff_f2 + 1) == j * (j - 1));

    Eigen::Matrix2d K;
    K << d.coupling[0][0], d.coupling[0][1], d.coupling[1][0], d.coupling[1][1];
    Eigen::EigenSolver<Eigen::Matrix2d> es(K.transpose());
    std::array<double, 2> ev{es.eigenvalues()[0].real(), es.eigenvalues()[1].real()};
    std::sort(ev.begin(), ev.end());
    CHECK(ev[0] == doctest::Approx(d.lambda2).epsilon(1e-13));
    CHECK(ev[1] == doctest::Approx(d.lambda1).epsilon(1e-13));
    // rows of T are left eigenvectors
    for (int i = 0; i < 2; ++i) {
      Eigen::RowVector2d t(d.transform[i][0], d.transform[i][1]);
      const double lam = i == 0 ? d.lambda1 : d.lambda2;
      CHECK((t * K - lam * t).norm() < 1e-13 * (1.0 + std::abs(lam)));
    }
  }
}

TEST_CASE("decoupling follows from the coupled system") {
  // r^2 Delta f = 2 D f + T (coupled residual) for f = T B
  const double alpha = 0.1, M = 1.0, eps = -0.004;
  for (int j = 1; j <= 4; ++j) {
    const DiagonalizedSystem d = diagonalize_coupled(j);
    for (double r : {0.3, 1.0, 5.0}) {
      const SeriesJet b1{r * r * std::exp(-r), (2 * r - r * r) * std::exp(-r), (2 - 4 * r + r * r) * std::exp(-r)};
      const double e = std::exp(-0.5 * r);
      const SeriesJet b2{r * r * r * e, (3 * r * r - 0.5 * r * r * r) * e,
                         (6 * r - 3 * r * r + 0.25 * r * r * r) * e};
      auto mix = [&](int i) {
        const double t0 = d.transform[i][0], t1 = d.transform[i][1];
        return SeriesJet{t0 * b1.value + t1 * b2.value, t0 * b1.d1 + t1 * b2.d1, t0 * b1.d2 + t1 * b2.d2};
      };
      const auto c = coupled_residual(alpha, M, eps, j, r, b1, b2);
      const auto u = decoupled_residual(alpha, M, eps, j, r, mix(0), mix(1));
      for (int i = 0; i < 2; ++i) {
        const double expect = d.transform[i][0] * c[0] + d.transform[i][1] * c[1];
        CHECK(r * r * u[i] == doctest::Approx(expect).epsilon(1e-12).scale(1.0));
      }
    }
  }
}

TEST_CASE("big-component equation") {
  const RadialODE ode = nonrel_big_equation(CoulombParams(0.1, 1), -0.005);
  CHECK(ode.label == OdeLabel::NonRelBig);
  CHECK(ode.q(1.0) == doctest::Approx(-1.81).epsilon(1e-14));
  CHECK(ode.p(1.0) == 2.0);
  const RadialODE free = nonrel_big_equation(CoulombParams(0.0, 0), 0.0);
  CHECK(free.q(2.0) == 0.0);
  // same operator as the scalar-like equation up to the q terms
  const RadialODE diag = nonrel_diagonal_equation(0.1, 1.0, -0.005, 1);
  CHECK(diag.q(0.7) == ode.q(0.7));
}

TEST_CASE("hydrogen-like spectrum") {
  CHECK(nonrel_spectrum(0.1, 1.0, 0, 0) == doctest::Approx(-0.005));
  CHECK(nonrel_spectrum(0.1, 1.0, 2, 0) == doctest::Approx(-5.5556e-4).epsilon(1e-4));
  CHECK(nonrel_spectrum(0.0, 1.0, 1, 1) == 0.0);
  CHECK(nonrel_nu_eff(Branch::NonRelMinus, 1) == 0);
  CHECK(nonrel_nu_eff(Branch::NonRelPlus, 1) == 2);
  CHECK(nonrel_nu_eff(Branch::NonRelBig, 1) == 1);
  CHECK_THROWS_AS(nonrel_nu_eff(Branch::NonRelMinus, 0), std::invalid_argument);
  CHECK_THROWS_AS(nonrel_nu_eff(Branch::HeunBranch, 1), std::invalid_argument);
  const EnergyLevel lv = nonrel_level(0.1, 2, 1, Branch::NonRelPlus);
  CHECK(lv.e_over_mc2 == doctest::Approx(-0.01 / (2 * 25.0)));
  CHECK(lv.n_effective == 5.0);
}

TEST_CASE("Kummer reduction") {
  for (int nu = 0; nu <= 3; ++nu)
    for (int n = 0; n <= 3; ++n) {
      const double eps = nonrel_spectrum(0.1, 1.0, nu, n);
      const KummerParams k = kummer_reduction(0.1, 1.0, eps, nu);
      CHECK(std::abs(k.A + n) < 1e-12);
      CHECK(k.C == 2.0 * nu + 2.0);
    }
  CHECK(kummer_reduction(0.1, 1.0, -0.01, 2).C == 6.0);
  CHECK_THROWS_AS(kummer_reduction(0.1, 1.0, 0.0, 1), std::domain_error);
  CHECK_THROWS_AS(kummer_reduction(0.1, 1.0, 0.3, 1), std::domain_error);
}

TEST_CASE("Kummer solution solves the decoupled equation") {
  for (int nu = 0; nu <= 3; ++nu)
    for (int n = 0; n <= 2; ++n) {
      const double eps = nonrel_spectrum(0.1, 1.0, nu, n);
      const RadialODE ode = nonrel_diagonal_equation(0.1, 1.0, eps, nu);
      for (double r : {0.5, 3.0, 20.0, 80.0}) {
        const SeriesJet u = kummer_radial_solution(0.1, 1.0, eps, nu, r);
        CHECK(std::abs(ode.residual(r, u.value, u.d1, u.d2)) <= 1e-10 * ode.residual_scale(r, u.value, u.d1, u.d2));
      }
    }
  // off-level energies also solve it; the series is then not a polynomial
  const RadialODE ode = nonrel_diagonal_equation(0.1, 1.0, -0.003, 1);
  const SeriesJet u = kummer_radial_solution(0.1, 1.0, -0.003, 1, 4.0);
  CHECK(std::abs(ode.residual(4.0, u.value, u.d1, u.d2)) <= 1e-10 * ode.residual_scale(4.0, u.value, u.d1, u.d2));
}

TEST_CASE("relativistic Heun levels against the decoupled channel with N ~ n + j") {
  // the offset between sqrt(1 + j(j+1)) and j makes the gap scale as alpha^2
  for (int j = 1; j <= 3; ++j) {
    auto gap = [&](double alpha) {
      const EnergyLevel h = spectrum_heun(alpha, j, 0);
      return std::abs(h.e_over_mc2 - 1.0 - nonrel_spectrum(alpha, 1.0, j - 1, 0) * 1.0);
    };
    CHECK(gap(0.02) / gap(0.01) == doctest::Approx(4.0).epsilon(0.01));
  }
}
