#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "dkp/spectra.hpp"

using namespace dkp;

TEST_CASE("scalar-like levels") {
  const EnergyLevel a = spectrum_scalar_like(0.1, 1, 0);
  CHECK(a.n_effective == doctest::Approx(1.99666297).epsilon(1e-8));
  CHECK(a.e_over_mc2 == doctest::Approx(0.99874817).epsilon(1e-8));
  CHECK(a.branch == Branch::ScalarLike);
  const EnergyLevel b = spectrum_scalar_like(0.1, 0, 1);
  CHECK(b.n_effective == doctest::Approx(1.98989795).epsilon(1e-8));
  CHECK(b.e_over_mc2 == doctest::Approx(0.99873966).epsilon(1e-8));
  CHECK(spectrum_scalar_like(1e-9, 2, 3).e_over_mc2 == doctest::Approx(1.0));
  CHECK_THROWS_AS(spectrum_scalar_like(0.6, 0, 0), std::domain_error);
  CHECK_THROWS_AS(spectrum_scalar_like(0.1, 0, -1), std::invalid_argument);
}

TEST_CASE("j = 0 levels") {
  const EnergyLevel a = spectrum_jzero(0.1, 0);
  CHECK(a.n_effective == doctest::Approx(1.99666297).epsilon(1e-8));
  CHECK(a.e_over_mc2 == doctest::Approx(0.99874817).epsilon(1e-8));
  CHECK(spectrum_jzero(0.1, 2).e_over_mc2 == doctest::Approx(0.99968714).epsilon(1e-8));
  CHECK(spectrum_jzero(1e-9, 0).e_over_mc2 == doctest::Approx(1.0));
  CHECK_THROWS_AS(spectrum_jzero(1.5, 0), std::domain_error);
}

TEST_CASE("Heun-branch levels") {
  const EnergyLevel a = spectrum_heun(0.1, 1, 0);
  CHECK(a.n_effective == doctest::Approx(1.73493516).epsilon(1e-8));
  CHECK(a.e_over_mc2 == doctest::Approx(0.99833192).epsilon(1e-8));
  CHECK(heun_quartic_residual(0.1, a.n_effective, a.e_over_mc2) < 1e-12);
  const EnergyLevel b = spectrum_heun(0.1, 1, 3);
  CHECK(b.n_effective == doctest::Approx(4.73493516).epsilon(1e-8));
  const double e2 = b.e_over_mc2 * b.e_over_mc2;
  CHECK(std::abs(e2 - (1.0 - 0.01 / (b.n_effective * b.n_effective))) < 1e-4);
  for (double alpha : {0.05, 0.1, 0.3})
    for (int j = 1; j <= 3; ++j)
      for (int n = 0; n <= 5; ++n) {
        const EnergyLevel lv = spectrum_heun(alpha, j, n);
        CHECK(heun_quartic_residual(alpha, lv.n_effective, lv.e_over_mc2) < 1e-11);
      }
  CHECK_THROWS_AS(spectrum_heun(0.1, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(heun_energy_from_n_effective(1.0, 1.5), std::domain_error);
}

TEST_CASE("large-N limit") {
  double prev = 0.0;
  for (double N : {10.0, 1e3, 1e6}) {
    const double e = heun_energy_from_n_effective(0.1, N);
    CHECK(e > prev);
    CHECK(e < 1.0);
    prev = e;
  }
  CHECK(std::abs(1.0 - heun_energy_from_n_effective(0.1, 1e3)) < 1e-6);
  CHECK(std::abs(1.0 - heun_energy_from_n_effective(0.1, 1e6)) < 1e-12);
}

TEST_CASE("non-relativistic limit") {
  EnergyLevel lv{Branch::JZero, 0, 0, 0.1, 0.0, 2.0};
  CHECK(nonrel_limit(lv) == doctest::Approx(-0.00125));
  lv.alpha = 0.0;
  CHECK(nonrel_limit(lv) == 0.0);
  const EnergyLevel h = spectrum_heun(0.1, 1, 0);
  CHECK(h.e_over_mc2 - 1.0 == doctest::Approx(-0.00166945).epsilon(1e-5));
  CHECK(nonrel_limit(h) == doctest::Approx(-0.00166113).epsilon(1e-5));
  CHECK(std::abs(h.e_over_mc2 - 1.0 - nonrel_limit(h)) < 1e-4);
  for (double alpha : {0.01, 0.02, 0.05})
    for (int j = 1; j <= 3; ++j)
      for (int n = 0; n <= 5; ++n) {
        const EnergyLevel x = spectrum_heun(alpha, j, n);
        CHECK(std::abs(x.e_over_mc2 - 1.0 - nonrel_limit(x)) < 5.0 * std::pow(alpha, 4));
      }
}

TEST_CASE("levels rise with n") {
  for (double alpha : {0.05, 0.1, 0.3})
    for (int j = 0; j <= 4; ++j)
      for (int n = 0; n < 8; ++n) {
        CHECK(spectrum_scalar_like(alpha, j, n + 1).e_over_mc2 > spectrum_scalar_like(alpha, j, n).e_over_mc2);
        if (j >= 1) CHECK(spectrum_heun(alpha, j, n + 1).e_over_mc2 > spectrum_heun(alpha, j, n).e_over_mc2);
        if (j == 0) CHECK(spectrum_jzero(alpha, n + 1).e_over_mc2 > spectrum_jzero(alpha, n).e_over_mc2);
        CHECK(spectrum_scalar_like(alpha, j, n).e_over_mc2 < 1.0);
      }
}

TEST_CASE("branch names") {
  for (Branch b : {Branch::ScalarLike, Branch::JZero, Branch::HeunBranch, Branch::NonRelMinus, Branch::NonRelPlus,
                   Branch::NonRelBig})
    CHECK(parse_branch(to_string(b)) == b);
  CHECK_THROWS_AS(parse_branch("dirac"), std::invalid_argument);
  CHECK(is_relativistic(Branch::HeunBranch));
  CHECK_FALSE(is_relativistic(Branch::NonRelBig));
}
