#include <doctest.h>

#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <stdexcept>

#include "dkp/heun.hpp"
#include "dkp/series.hpp"
#include "dkp/spectra.hpp"

using namespace dkp;

namespace {

HeunMap map_at(double alpha, int j, double e) {
  const CoulombParams p(alpha, j, Parity::MinusToJ);
  return map_to_heun(p, to_energy_params(p, e * p.mass()));
}

}  // namespace

TEST_CASE("parameter map") {
  const CoulombParams p(0.1, 1, Parity::MinusToJ);
  const HeunMap m = map_to_heun(p, to_energy_params(p, 0.5));
  CHECK(m.canonical.a == doctest::Approx(0.34641016).epsilon(1e-8));
  CHECK(m.canonical.b == doctest::Approx(2.0 * std::sqrt(3.01)).epsilon(1e-15));
  CHECK(m.canonical.c == -2.0);
  CHECK(m.canonical.h == 2.0);
  CHECK(m.canonical.d == doctest::Approx(0.08));
  CHECK(m.A == doctest::Approx(-1.0 + std::sqrt(3.01)));
  CHECK(m.B == doctest::Approx(std::sqrt(0.03)));
  CHECK_THROWS_AS(map_to_heun(p, EnergyParams{1.0, 1.0, 0.01}), std::invalid_argument);
  for (double e : {0.2, 0.9, 0.999})
    for (int j = 1; j <= 4; ++j) {
      const HeunCanonical hc = map_at(0.1, j, e).canonical;
      CHECK(hc.c == -2.0);
      CHECK(hc.h == 2.0);
      CHECK(hc.a >= 0.0);
      CHECK(hc.b >= 0.0);
    }
}

TEST_CASE("canonical operator reproduces the peeled equation") {
  for (double e : {0.5, 0.95})
    for (int j = 1; j <= 3; ++j) {
      const HeunMap m = map_at(0.1, j, e);
      const double L2 = m.canonical.d / 2.0;
      for (double x : {-3.0, -1.0, -0.25, 0.4, 2.5}) {
        CHECK(heun_p(m.canonical, x) == doctest::Approx(peeled_p(m.A, m.B, x)).epsilon(1e-12));
        CHECK(heun_q(m.canonical, x) == doctest::Approx(peeled_q(m.A, m.B, L2, x)).epsilon(1e-12));
      }
    }
}

TEST_CASE("local series") {
  const HeunMap m = map_at(0.1, 1, 0.9);
  const auto f = heun_local_series(m.canonical, 200);
  CHECK(f[0] == 1.0);
  CHECK(f[1] == doctest::Approx(-(2 * m.A * m.B + m.A + 3 * m.B) / (2 * m.A + 3)).epsilon(1e-14));

  const double L2 = m.canonical.d / 2.0;
  auto jet = [&](double x) {
    return evaluate_power_series(f, x);
  };
  for (double x : {-0.5, -0.3, -0.1, 0.1, 0.3, 0.5}) {
    const SeriesJet s = jet(x);
    const double t1 = s.d2, t2 = peeled_p(m.A, m.B, x) * s.d1, t3 = peeled_q(m.A, m.B, L2, x) * s.value;
    CHECK(std::abs(t1 + t2 + t3) <= 1e-9 * (std::abs(t1) + std::abs(t2) + std::abs(t3)));
  }

  SUBCASE("agrees with direct integration") {
    using State = std::array<double, 2>;
    const double x0 = -0.05;
    State y{jet(x0).value, jet(x0).d1};
    auto rhs = [&](const State& s, State& ds, double x) {
      ds[0] = s[1];
      ds[1] = -peeled_p(m.A, m.B, x) * s[1] - peeled_q(m.A, m.B, L2, x) * s[0];
    };
    boost::numeric::odeint::integrate_adaptive(
        boost::numeric::odeint::make_controlled(1e-14, 1e-13, boost::numeric::odeint::runge_kutta_fehlberg78<State>()),
        rhs, y, x0, -0.5, -1e-3);
    CHECK(y[0] == doctest::Approx(jet(-0.5).value).epsilon(1e-8));
    CHECK(y[1] == doctest::Approx(jet(-0.5).d1).epsilon(1e-8));
  }

  HeunCanonical res = m.canonical;
  res.b = -3.0;
  CHECK_THROWS_AS(heun_local_series(res, 5), std::domain_error);
}

TEST_CASE("polynomial condition at the closed-form levels") {
  for (double alpha : {0.05, 0.1, 0.3})
    for (int j = 1; j <= 3; ++j)
      for (int n = 0; n <= 5; ++n) {
        const EnergyLevel lv = spectrum_heun(alpha, j, n);
        const HeunMap m = map_at(alpha, j, lv.e_over_mc2);
        const double L2 = m.canonical.d / 2.0;
        // the displayed residual equals 4 Lambda^2; with B -> -B the condition holds
        CHECK(polynomial_condition_residual(m.canonical, n) == doctest::Approx(4.0 * L2).epsilon(1e-10));
        HeunCanonical mirrored = m.canonical;
        mirrored.a = -mirrored.a;
        CHECK(std::abs(polynomial_condition_residual(mirrored, n)) < 1e-9);
      }
}

TEST_CASE("polynomial condition sensitivity and degenerate case") {
  const EnergyLevel lv = spectrum_heun(0.1, 1, 0);
  const double r0 = polynomial_condition_residual(map_at(0.1, 1, lv.e_over_mc2).canonical, 0);
  const double r1 = polynomial_condition_residual(map_at(0.1, 1, lv.e_over_mc2 - 1e-3).canonical, 0);
  CHECK(std::abs(r1 - r0) > 1e-4);
  CHECK(polynomial_condition_residual({0.0, 3.0, -2.0, 0.7, 2.0}, 4) == 0.7);
  CHECK_THROWS_AS(polynomial_condition_residual({0.0, 3.0, -2.0, 0.7, 2.0}, -1), std::invalid_argument);
}

TEST_CASE("tail diagnostic shows no truncation at the closed-form levels") {
  for (int n = 0; n <= 3; ++n) {
    const EnergyLevel lv = spectrum_heun(0.1, 1, n);
    const HeunTail t = heun_tail_diagnostic(map_at(0.1, 1, lv.e_over_mc2).canonical, n);
    CHECK(std::isfinite(t.f_n1));
    CHECK(t.f_n1 > 1e-6);
  }
}
