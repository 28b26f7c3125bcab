#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "dkp/core_params.hpp"

namespace dkp {

struct WignerIndex {
  int j;
  int m;
  int sigma;
};

/// d^j_{-m,sigma}(theta), explicit Wigner sum with log-factorial coefficients. j <= 50.
/// Returns 0 when |sigma| > j.
double wigner_small_d(const WignerIndex& idx, double theta);
/// Derivative of wigner_small_d with respect to theta.
double wigner_small_d_prime(const WignerIndex& idx, double theta);

struct RecurrenceReport {
  double max_residual = 0.0;
  int worst_identity = -1;  // 0..5 in the order d/dtheta D-1, (m-cos)/sin D-1, d/dtheta D0, m/sin D0, d/dtheta D+1, (m+cos)/sin D+1
  int worst_m = 0;
  double worst_theta = 0.0;
};

/// Worst absolute residual of the six first-order identities linking D_{-2..+2}
/// over the grid and all m in [-j, j]. Grid points must avoid 0 and pi.
RecurrenceReport verify_recurrences(int j, std::span<const double> theta_grid);

/// Uniform grid of n points on [lo, hi].
std::vector<double> linspace(double lo, double hi, int n);

enum class Component { Phi0, Phi1, Phi2, Phi3, E1, E2, E3, H1, H2, H3 };
const char* to_string(Component c) noexcept;

/// lhs = coefficient * rhs; rhs == lhs with coefficient 0 encodes "lhs = 0".
struct Tie {
  Component lhs;
  double coefficient;
  Component rhs;
  bool operator==(const Tie&) const = default;
};

struct ParityConstraint {
  Parity parity;
  int j;
  std::vector<Tie> relations;
};

ParityConstraint parity_constraints(Parity parity, int j);

/// Imposes the ties on a ten-component vector ordered as Component.
template <class T>
void apply_parity(const ParityConstraint& pc, std::array<T, 10>& v) {
  for (const auto& t : pc.relations)
    v[static_cast<int>(t.lhs)] = t.coefficient * v[static_cast<int>(t.rhs)];
}

using IntMatrix3 = std::array<std::array<int, 3>, 3>;
/// The 3x3 vector block of the inversion operator in the cyclic basis.
IntMatrix3 parity_block();
IntMatrix3 multiply(const IntMatrix3& a, const IntMatrix3& b);

}  // namespace dkp
