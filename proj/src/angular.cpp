#include "dkp/angular.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dkp {
namespace {

constexpr int kMaxJ = 50;

double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

void check_index(const WignerIndex& idx) {
  if (idx.j < 0 || idx.j > kMaxJ) throw std::invalid_argument("wigner_small_d: j must lie in [0, 50]");
  if (std::abs(idx.m) > idx.j) throw std::invalid_argument("wigner_small_d: |m| must not exceed j");
  if (std::abs(idx.sigma) > 2) throw std::invalid_argument("wigner_small_d: |sigma| must not exceed 2");
}

// Standard d^j_{mp,m}(beta); derivative order 0 or 1.
double small_d(int j, int mp, int m, double beta, int order) {
  if (std::abs(mp) > j || std::abs(m) > j) return 0.0;
  const double c = std::cos(0.5 * beta);
  const double s = std::sin(0.5 * beta);
  const double half_log_norm =
      0.5 * (log_factorial(j + mp) + log_factorial(j - mp) + log_factorial(j + m) + log_factorial(j - m));
  const int k_lo = std::max(0, m - mp);
  const int k_hi = std::min(j + m, j - mp);
  double sum = 0.0;
  for (int k = k_lo; k <= k_hi; ++k) {
    const double coef = std::exp(half_log_norm - log_factorial(j + m - k) - log_factorial(k) -
                                 log_factorial(mp - m + k) - log_factorial(j - mp - k));
    const double sign = ((mp - m + k) % 2 == 0) ? 1.0 : -1.0;
    const int pc = 2 * j + m - mp - 2 * k;
    const int ps = mp - m + 2 * k;
    double term;
    if (order == 0) {
      term = std::pow(c, pc) * std::pow(s, ps);
    } else {
      term = 0.0;
      if (pc > 0) term -= 0.5 * pc * std::pow(c, pc - 1) * std::pow(s, ps + 1);
      if (ps > 0) term += 0.5 * ps * std::pow(c, pc + 1) * std::pow(s, ps - 1);
    }
    sum += sign * coef * term;
  }
  return sum;
}

}  // namespace

double wigner_small_d(const WignerIndex& idx, double theta) {
  check_index(idx);
  return small_d(idx.j, -idx.m, idx.sigma, theta, 0);
}

double wigner_small_d_prime(const WignerIndex& idx, double theta) {
  check_index(idx);
  return small_d(idx.j, -idx.m, idx.sigma, theta, 1);
}

RecurrenceReport verify_recurrences(int j, std::span<const double> theta_grid) {
  if (j < 1) throw std::invalid_argument("verify_recurrences: j must be at least 1");
  const double nu = std::sqrt(static_cast<double>(j) * (j + 1));
  const double a = std::sqrt(static_cast<double>(j - 1) * (j + 2));
  RecurrenceReport rep;
  for (int m = -j; m <= j; ++m) {
    for (double th : theta_grid) {
      const double st = std::sin(th), ct = std::cos(th);
      if (std::abs(st) < 1e-12) throw std::invalid_argument("verify_recurrences: grid must avoid 0 and pi");
      auto D = [&](int sg) { return wigner_small_d({j, m, sg}, th); };
      auto dD = [&](int sg) { return wigner_small_d_prime({j, m, sg}, th); };
      const double r[6] = {
          dD(-1) - 0.5 * (a * D(-2) - nu * D(0)),
          (m - ct) / st * D(-1) - 0.5 * (a * D(-2) + nu * D(0)),
          dD(0) - 0.5 * (nu * D(-1) - nu * D(1)),
          m / st * D(0) - 0.5 * (nu * D(-1) + nu * D(1)),
          dD(1) - 0.5 * (nu * D(0) - a * D(2)),
          (m + ct) / st * D(1) - 0.5 * (nu * D(0) + a * D(2)),
      };
      for (int k = 0; k < 6; ++k) {
        if (std::abs(r[k]) > rep.max_residual) {
          rep.max_residual = std::abs(r[k]);
          rep.worst_identity = k;
          rep.worst_m = m;
          rep.worst_theta = th;
        }
      }
    }
  }
  return rep;
}

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 1) throw std::invalid_argument("linspace: need at least one point");
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  for (int i = 0; i < n; ++i) out[i] = lo + (hi - lo) * i / (n - 1);
  return out;
}

const char* to_string(Component c) noexcept {
  static const char* names[] = {"Phi0", "Phi1", "Phi2", "Phi3", "E1", "E2", "E3", "H1", "H2", "H3"};
  return names[static_cast<int>(c)];
}

ParityConstraint parity_constraints(Parity parity, int j) {
  if (j < 0) throw std::invalid_argument("parity_constraints: j must be non-negative");
  if (j == 0 && parity == Parity::MinusToJ)
    throw std::invalid_argument("parity_constraints: j = 0 admits only parity (-1)^(j+1)");
  using C = Component;
  ParityConstraint pc{parity, j, {}};
  if (parity == Parity::MinusToJPlus1) {
    pc.relations = {{C::Phi0, 0.0, C::Phi0}, {C::Phi2, 0.0, C::Phi2}, {C::E2, 0.0, C::E2},
                    {C::Phi3, -1.0, C::Phi1}, {C::E3, -1.0, C::E1}, {C::H3, 1.0, C::H1}};
    if (j == 0) {
      // D_{+-1} vanish identically at j = 0, so only the sigma = 0 slots survive.
      pc.relations = {{C::Phi1, 0.0, C::Phi1}, {C::Phi3, 0.0, C::Phi3}, {C::E1, 0.0, C::E1},
                      {C::E3, 0.0, C::E3},     {C::H1, 0.0, C::H1},     {C::H3, 0.0, C::H3},
                      {C::H2, 0.0, C::H2}};
    }
  } else {
    pc.relations = {{C::Phi3, 1.0, C::Phi1}, {C::E3, 1.0, C::E1}, {C::H3, -1.0, C::H1}, {C::H2, 0.0, C::H2}};
  }
  return pc;
}

IntMatrix3 parity_block() { return {{{0, 0, -1}, {0, -1, 0}, {-1, 0, 0}}}; }

IntMatrix3 multiply(const IntMatrix3& a, const IntMatrix3& b) {
  IntMatrix3 c{};
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k)
      for (int l = 0; l < 3; ++l) c[i][k] += a[i][l] * b[l][k];
  return c;
}

}  // namespace dkp
