#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "dkp/core_params.hpp"

using namespace dkp;

TEST_CASE("nu from j") {
  CHECK(derived_nu(CoulombParams(0.1, 0)) == 0.0);
  CHECK(derived_nu(CoulombParams(0.1, 1)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(derived_nu(CoulombParams(0.1, 2)) == doctest::Approx(1.7320508075688772).epsilon(1e-15));
  for (int j = 0; j <= 50; ++j) {
    const CoulombParams p(0.1, j);
    const double exact = j * (j + 1) / 2.0;
    CHECK(std::abs(p.nu_radial() * p.nu_radial() - exact) <= 1e-14 * std::max(exact, 1.0));
    CHECK(std::abs(p.nu_angular() * p.nu_angular() - 2.0 * exact) <= 1e-14 * std::max(2.0 * exact, 1.0));
  }
}

TEST_CASE("energy parameters") {
  const CoulombParams p(0.1, 1);
  const EnergyParams e = to_energy_params(p, 0.5);
  CHECK(e.lambda == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(e.Lambda2 == doctest::Approx(0.04).epsilon(1e-15));

  const EnergyParams f = to_energy_params(CoulombParams(0.5, 1), 0.25);
  CHECK(f.lambda == doctest::Approx(4.0));
  CHECK(f.Lambda2 == doctest::Approx(4.0));

  const EnergyParams g = to_energy_params(p, 1.0 - 1e-12);
  CHECK(g.lambda > 1.0);
  CHECK(g.Lambda2 == doctest::Approx(0.01).epsilon(1e-10));

  for (double eps : {0.01, 0.3, 0.77, 0.999999}) {
    const EnergyParams r = to_energy_params(p, eps);
    CHECK(std::abs(p.mass() / r.lambda - eps) / eps < 1e-15);
    CHECK(r.Lambda2 == p.alpha() * p.alpha() * r.lambda * r.lambda);
  }

  CHECK_THROWS_AS(to_energy_params(p, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(to_energy_params(p, -0.2), std::invalid_argument);
  CHECK_THROWS_AS(to_energy_params(p, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(to_energy_params(p, 1.5), std::invalid_argument);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(CoulombParams(-0.1, 1), std::invalid_argument);
  CHECK_THROWS_AS(CoulombParams(0.1, -1), std::invalid_argument);
  CHECK_THROWS_AS(CoulombParams(0.1, 1, Parity::MinusToJ, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(CoulombParams(0.1, 0, Parity::MinusToJ), std::invalid_argument);
  CHECK_NOTHROW(CoulombParams(0.1, 0, Parity::MinusToJPlus1));
  CHECK_NOTHROW(CoulombParams(0.0, 2));
}

TEST_CASE("range warnings") {
  CHECK(CoulombParams(0.1, 1).warnings().empty());
  CHECK(CoulombParams(1.6, 0).warnings().size() == 2);
  CHECK(CoulombParams(0.8, 0).warnings().size() == 1);
  CHECK(CoulombParams(1.5, 3).warnings().size() == 1);
}
