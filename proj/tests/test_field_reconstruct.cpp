#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "dkp/field_reconstruct.hpp"
#include "dkp/oracle.hpp"
#include "dkp/series.hpp"
#include "dkp/spectra.hpp"

using namespace dkp;

namespace {

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo * std::pow(hi / lo, i / double(n - 1));
  g.back() = hi;
  return g;
}

struct Solved {
  CoulombParams params{0.1, 1, Parity::MinusToJ};
  double eps = 0.0;
  FieldProfile profile;
};

Solved heun_ground() {
  Solved s;
  s.eps = spectrum_heun(0.1, 1, 0).e_over_mc2;
  const auto grid = log_grid(0.5, 20.0, 200);
  const RadialSamples u = regular_solution(build_main_type1(s.params, s.eps), grid);
  s.profile = reconstruct(u.r, u.u, u.du, s.params, s.eps);
  return s;
}

}  // namespace

TEST_CASE("zero main function gives zero fields") {
  const CoulombParams p(0.1, 2, Parity::MinusToJ);
  const std::vector<double> r{0.5, 1.0, 3.0}, z(3, 0.0);
  const FieldProfile f = reconstruct(r, z, z, p, 0.9);
  for (const auto* v : {&f.e1, &f.e2, &f.phi1, &f.phi2, &f.h1, &f.de1, &f.dh1})
    for (double x : *v) CHECK(x == 0.0);
  for (double x : h1_dual_residual(f, p, 0.9).value) CHECK(x == 0.0);
  for (double x : lorentz_residual(f, p, 0.9).value) CHECK(x == 0.0);
}

TEST_CASE("monomial near the origin") {
  const CoulombParams p(0.1, 1, Parity::MinusToJ);
  const double A = main_type1_indices(0.1, p.nu_radial()).plus;
  const std::vector<double> r{1e-3, 1e-2, 0.1};
  std::vector<double> f, df;
  for (double x : r) {
    f.push_back(std::pow(x, A));
    df.push_back(A * std::pow(x, A - 1));
  }
  const FieldProfile fp = reconstruct(r, f, df, p, 0.9);
  for (std::size_t i = 0; i < r.size(); ++i) {
    CHECK(fp.e1[i] / (p.mass() * r[i] * f[i]) == doctest::Approx((5 + 2 * A) / (2 * p.nu_radial())).epsilon(1e-14));
    CHECK(fp.e2[i] / f[i] == -2.0 * p.mass() * r[i]);
  }
}

TEST_CASE("reconstruction is linear") {
  const CoulombParams p(0.2, 2, Parity::MinusToJ);
  const std::vector<double> r{0.3, 1.1, 4.0};
  const std::vector<double> f1{0.4, -0.2, 1.3}, d1{1.0, 0.5, -0.7};
  const std::vector<double> f2{-1.0, 0.8, 0.1}, d2{0.2, 0.9, 0.3};
  std::vector<double> fs(3), ds(3);
  for (int i = 0; i < 3; ++i) {
    fs[i] = 2.0 * f1[i] - 3.0 * f2[i];
    ds[i] = 2.0 * d1[i] - 3.0 * d2[i];
  }
  const FieldProfile a = reconstruct(r, f1, d1, p, 0.9), b = reconstruct(r, f2, d2, p, 0.9),
                     c = reconstruct(r, fs, ds, p, 0.9);
  auto lin = [](const std::vector<double>& x, const std::vector<double>& y, const std::vector<double>& z) {
    for (std::size_t i = 0; i < x.size(); ++i)
      CHECK(std::abs(z[i] - (2.0 * x[i] - 3.0 * y[i])) <= 1e-12 * (1.0 + std::abs(z[i])));
  };
  lin(a.e1, b.e1, c.e1);
  lin(a.phi1, b.phi1, c.phi1);
  lin(a.phi2, b.phi2, c.phi2);
  lin(a.h1, b.h1, c.h1);
  lin(a.dh1, b.dh1, c.dh1);
  lin(a.dphi1, b.dphi1, c.dphi1);
  const auto ra = h1_dual_residual(a, p, 0.9).value;
  const std::vector<double> f2x{0.8, -0.4, 2.6}, d2x{2.0, 1.0, -1.4};
  const auto rb = h1_dual_residual(reconstruct(r, f2x, d2x, p, 0.9), p, 0.9).value;
  for (int i = 0; i < 3; ++i) CHECK(rb[i] == doctest::Approx(2.0 * ra[i]));
}

TEST_CASE("invalid input") {
  const std::vector<double> r{0.0, 1.0}, f{1.0, 1.0};
  CHECK_THROWS_AS(reconstruct(r, f, f, CoulombParams(0.1, 1, Parity::MinusToJ), 0.9), std::invalid_argument);
  const std::vector<double> r2{0.5, 1.0};
  CHECK_THROWS_AS(reconstruct(r2, f, f, CoulombParams(0.1, 0), 0.9), std::invalid_argument);
  const std::vector<double> shorter{1.0};
  CHECK_THROWS_AS(reconstruct(r2, shorter, f, CoulombParams(0.1, 1, Parity::MinusToJ), 0.9), std::invalid_argument);
}

TEST_CASE("fields from a solution of the main equation") {
  const Solved s = heun_ground();
  const auto sys = system_residuals(s.profile, s.params, s.eps);
  for (int k = 0; k < 5; ++k) CHECK(sys[k].max_relative() < 1e-6);
  CHECK(lorentz_residual(s.profile, s.params, s.eps).max_relative() < 1e-6);
  CHECK(e2_identity_deviation(s.profile, s.params) < 1e-12);

  // the last equation fails by exactly M times the gap between the two H1 representations
  const ResidualProfile dual = h1_dual_residual(s.profile, s.params, s.eps);
  CHECK(dual.max_relative() > 1e-3);
  for (std::size_t i = 0; i < s.profile.r.size(); ++i)
    CHECK(sys[5].value[i] == doctest::Approx(-s.params.mass() * dual.value[i]).epsilon(1e-9));
}
