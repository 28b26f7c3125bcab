#include "dkp/oracle.hpp"

#include <algorithm>
#include <array>
#include <boost/math/tools/toms748_solve.hpp>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <limits>

#include "dkp/series.hpp"

namespace dkp {
namespace {

namespace odeint = boost::numeric::odeint;
using State = std::array<double, 2>;

// u_t = v, v_t = (1 - r p) v - r^2 q u, with t = ln r and v = r u'.
struct LogForm {
  const RadialODE* ode;
  void operator()(const State& y, State& dy, double t) const {
    const double r = std::exp(t);
    dy[0] = y[1];
    dy[1] = (1.0 - r * ode->p(r)) * y[1] - r * r * ode->q(r) * y[0];
  }
};

auto make_stepper(double tol) {
  return odeint::make_controlled(1e-300, tol, odeint::runge_kutta_fehlberg78<State>());
}

State regular_launch(const RadialODE& ode, double r_min) {
  const LocalCoefficients lc = local_coefficients(ode, std::min(1e-5, 0.1 * r_min));
  const double b = lc.p0 - 1.0;
  const double disc = b * b - 4.0 * lc.q0;
  if (disc < 0.0) throw IntegrationError("complex Frobenius indices at the origin");
  const double s = 0.5 * (-b + std::sqrt(disc));
  const double c1 = frobenius_c1(lc, s);
  return {1.0 + c1 * r_min, s + (s + 1.0) * c1 * r_min};
}

struct Sweep {
  State y;
  int nodes = 0;
};

Sweep integrate_counting(const RadialODE& ode, State y, double t0, double t1, double tol) {
  auto stepper = make_stepper(tol);
  Sweep s;
  double last = y[0];
  const double dir = t1 > t0 ? 1.0 : -1.0;
  const int chunks = std::max(1, static_cast<int>(std::ceil(std::abs(t1 - t0) / 0.5)));
  double dt = dir * 1e-3;
  try {
    for (int c = 0; c < chunks; ++c) {
      const double a = t0 + (t1 - t0) * c / chunks;
      const double b = c + 1 == chunks ? t1 : t0 + (t1 - t0) * (c + 1) / chunks;
      odeint::integrate_adaptive(stepper, LogForm{&ode}, y, a, b, dt, [&](const State& st, double) {
        if ((st[0] > 0.0 && last < 0.0) || (st[0] < 0.0 && last > 0.0)) ++s.nodes;
        if (st[0] != 0.0) last = st[0];
        if (!std::isfinite(st[0]) || !std::isfinite(st[1])) throw IntegrationError("non-finite radial solution");
      });
      const double norm = std::hypot(y[0], y[1]);
      if (norm > 1e100 || (norm < 1e-100 && norm > 0.0)) {
        y[0] /= norm;
        y[1] /= norm;
        last = y[0] != 0.0 ? y[0] : last;
      }
    }
  } catch (const odeint::step_adjustment_error&) {
    throw IntegrationError("step size underflow while integrating the radial equation");
  }
  s.y = y;
  return s;
}

double q_liouville(const RadialODE& ode, double t) {
  const double r = std::exp(t);
  const double h = 1e-4;
  auto P = [&](double tt) {
    const double rr = std::exp(tt);
    return rr * ode.p(rr) - 1.0;
  };
  const double Pt = (8.0 * (P(t + h) - P(t - h)) - (P(t + 2 * h) - P(t - 2 * h))) / (12.0 * h);
  const double P0 = P(t);
  return r * r * ode.q(r) - 0.25 * P0 * P0 - 0.5 * Pt;
}

double matching_time(const RadialODE& ode, double t_lo, double t_hi) {
  const int n = 600;
  double t_turn = std::numeric_limits<double>::quiet_NaN();
  for (int i = 0; i <= n; ++i) {
    const double t = t_lo + (t_hi - t_lo) * i / n;
    if (q_liouville(ode, t) > 0.0) t_turn = t;
  }
  const double span = t_hi - t_lo;
  if (std::isnan(t_turn)) t_turn = t_lo + 0.5 * span;
  return std::clamp(t_turn, t_lo + 0.05 * span, t_hi - 0.05 * span);
}

struct Boundary {
  double t_lo, t_hi;
  double kappa;
};

Boundary boundaries(const RadialODE& ode, double r_min, double r_max_fixed, double decay_lengths, double cap) {
  if (!(ode.q_infinity < 0.0))
    throw std::invalid_argument("trial energy lies outside the bound-state range (no exponential decay)");
  const double kappa = std::sqrt(-ode.q_infinity);
  const double r_max = r_max_fixed > 0.0 ? r_max_fixed : std::min(cap, decay_lengths / kappa);
  if (!(r_max > r_min)) throw std::invalid_argument("r_max must exceed r_min");
  return {std::log(r_min), std::log(r_max), kappa};
}

struct MatchResult {
  double w;  // normalized Wronskian
  int nodes;
  double t_match;
  State out, in;
};

MatchResult match(const RadialODE& ode, const Boundary& b, double r_min, double tol) {
  const double tm = matching_time(ode, b.t_lo, b.t_hi);
  const Sweep out = integrate_counting(ode, regular_launch(ode, r_min), b.t_lo, tm, tol);
  const double r_max = std::exp(b.t_hi);
  const Sweep in = integrate_counting(ode, State{1.0, -b.kappa * r_max}, b.t_hi, tm, tol);
  const double no = std::hypot(out.y[0], out.y[1]);
  const double ni = std::hypot(in.y[0], in.y[1]);
  MatchResult m;
  m.w = (out.y[0] * in.y[1] - out.y[1] * in.y[0]) / (no * ni);
  m.nodes = out.nodes + in.nodes;
  m.t_match = tm;
  m.out = out.y;
  m.in = in.y;
  return m;
}

void integrate_samples(const RadialODE& ode, State y, const std::vector<double>& times, double tol,
                       std::vector<State>& out) {
  auto stepper = make_stepper(tol);
  const double dt = (times.back() > times.front() ? 1.0 : -1.0) * 1e-3;
  odeint::integrate_times(stepper, LogForm{&ode}, y, times.begin(), times.end(), dt,
                          [&](const State& st, double) { out.push_back(st); });
}

RadialSamples matched_samples(const RadialODE& ode, const Boundary& b, const MatchResult& m, double r_min,
                              int samples, double tol) {
  std::vector<double> t_out, t_in;
  for (int i = 0; i < samples; ++i) {
    const double t = b.t_lo + (b.t_hi - b.t_lo) * i / (samples - 1);
    (t <= m.t_match ? t_out : t_in).push_back(t);
  }
  std::vector<State> ys;
  if (!t_out.empty()) {
    if (t_out.back() != m.t_match) t_out.push_back(m.t_match);
    integrate_samples(ode, regular_launch(ode, r_min), t_out, tol, ys);
    ys.pop_back();
    t_out.pop_back();
  }
  std::vector<State> yin;
  if (!t_in.empty()) {
    std::vector<double> rev(t_in.rbegin(), t_in.rend());
    if (rev.back() != m.t_match) rev.push_back(m.t_match);
    integrate_samples(ode, State{1.0, -b.kappa * std::exp(b.t_hi)}, rev, tol, yin);
    yin.pop_back();
    std::reverse(yin.begin(), yin.end());
  }
  // scale the inner piece onto the outer one at the matching point
  const double scale = std::abs(m.in[0]) > 0.0 ? m.out[0] / m.in[0] : m.out[1] / m.in[1];
  RadialSamples s;
  std::size_t k = 0;
  for (double t : t_out) {
    const double r = std::exp(t);
    s.r.push_back(r);
    s.u.push_back(ys[k][0]);
    s.du.push_back(ys[k][1] / r);
    ++k;
  }
  for (std::size_t i = 0; i < t_in.size(); ++i) {
    const double r = std::exp(t_in[i]);
    s.r.push_back(r);
    s.u.push_back(scale * yin[i][0]);
    s.du.push_back(scale * yin[i][1] / r);
  }
  double mx = 0.0;
  for (double u : s.u) mx = std::max(mx, std::abs(u));
  if (mx > 0.0) {
    const double sign = s.u.front() < 0.0 ? -1.0 : 1.0;
    for (auto& u : s.u) u *= sign / mx;
    for (auto& d : s.du) d *= sign / mx;
  }
  return s;
}

}  // namespace

double decay_boundary(const RadialODE& ode, double decay_lengths, double cap) {
  if (!(ode.q_infinity < 0.0)) throw std::invalid_argument("no exponential decay at this energy");
  return std::min(cap, decay_lengths / std::sqrt(-ode.q_infinity));
}

int count_nodes(const RadialODE& ode, double r_min, double r_max, double tol) {
  return integrate_counting(ode, regular_launch(ode, r_min), std::log(r_min), std::log(r_max), tol).nodes;
}

RadialSamples regular_solution(const RadialODE& ode, std::span<const double> r_grid, double r_min, double tol) {
  if (r_grid.empty()) throw std::invalid_argument("regular_solution: empty grid");
  if (!(r_grid.front() >= r_min)) throw std::invalid_argument("regular_solution: grid starts below r_min");
  std::vector<double> times{std::log(r_min)};
  for (double r : r_grid) {
    const double t = std::log(r);
    if (t <= times.back()) {
      if (t == times.back() && times.size() == 1) continue;
      throw std::invalid_argument("regular_solution: grid must be strictly increasing");
    }
    times.push_back(t);
  }
  std::vector<State> ys;
  integrate_samples(ode, regular_launch(ode, r_min), times, tol, ys);
  RadialSamples s;
  const std::size_t skip = ys.size() - r_grid.size();
  for (std::size_t i = 0; i < r_grid.size(); ++i) {
    s.r.push_back(r_grid[i]);
    s.u.push_back(ys[i + skip][0]);
    s.du.push_back(ys[i + skip][1] / r_grid[i]);
  }
  return s;
}

OracleResult shoot_eigenvalue(const OdeFamily& family, const ShootingConfig& cfg) {
  if (!(cfg.r_min > 0.0)) throw std::invalid_argument("shoot_eigenvalue: r_min must be positive");
  if (cfg.r_max != 0.0 && !(cfg.r_max > cfg.r_min))
    throw std::invalid_argument("shoot_eigenvalue: r_max must exceed r_min");
  if (!(cfg.tol_eig >= 1e-12)) throw std::invalid_argument("shoot_eigenvalue: tol_eig must be at least 1e-12");
  if (!(cfg.eps_lo < cfg.eps_hi)) throw std::invalid_argument("shoot_eigenvalue: empty energy bracket");

  auto eval_match = [&](double eps) {
    const RadialODE ode = family(eps);
    const Boundary b = boundaries(ode, cfg.r_min, cfg.r_max, cfg.decay_lengths, cfg.r_max_cap);
    return match(ode, b, cfg.r_min, cfg.tol_ode);
  };
  auto eval_nodes = [&](double eps) {
    const RadialODE ode = family(eps);
    const Boundary b = boundaries(ode, cfg.r_min, cfg.r_max, cfg.decay_lengths, cfg.r_max_cap);
    return integrate_counting(ode, regular_launch(ode, cfg.r_min), b.t_lo, b.t_hi, cfg.tol_ode).nodes;
  };

  double lo = cfg.eps_lo, hi = cfg.eps_hi;
  double wlo = 0.0, whi = 0.0;
  if (cfg.node_target) {
    const int k = *cfg.node_target;
    if (k < 0) throw std::invalid_argument("shoot_eigenvalue: node target must be non-negative");
    int nlo = eval_nodes(lo), nhi = eval_nodes(hi);
    if (nlo > k || nhi <= k)
      throw BracketError("no sign change in bracket: node counts " + std::to_string(nlo) + " and " +
                         std::to_string(nhi) + " do not enclose level " + std::to_string(k));
    bool bracketed = false;
    for (int it = 0; it < 200; ++it) {
      if (nlo == k && nhi == k + 1) {
        wlo = eval_match(lo).w;
        whi = eval_match(hi).w;
        if (wlo * whi < 0.0) {
          bracketed = true;
          break;
        }
      }
      const double mid = 0.5 * (lo + hi);
      if (hi - lo <= 1e-15 * std::max(std::abs(lo), std::abs(hi))) break;
      const int nm = eval_nodes(mid);
      if (nm <= k) {
        lo = mid;
        nlo = nm;
      } else {
        hi = mid;
        nhi = nm;
      }
    }
    if (!bracketed) throw BracketError("no sign change in bracket: matching function keeps its sign");
  } else {
    wlo = eval_match(lo).w;
    whi = eval_match(hi).w;
    if (wlo * whi > 0.0) throw BracketError("no sign change in bracket");
  }

  double eps;
  if (wlo == 0.0) {
    eps = lo;
  } else if (whi == 0.0) {
    eps = hi;
  } else {
    const double tol = cfg.tol_eig;
    auto stop = [tol](double a, double b) { return std::abs(b - a) <= tol * std::max(std::abs(a), std::abs(b)); };
    boost::uintmax_t iters = 200;
    const auto root = boost::math::tools::toms748_solve([&](double e) { return eval_match(e).w; }, lo, hi, wlo,
                                                        whi, stop, iters);
    eps = 0.5 * (root.first + root.second);
  }

  const RadialODE ode = family(eps);
  const Boundary b = boundaries(ode, cfg.r_min, cfg.r_max, cfg.decay_lengths, cfg.r_max_cap);
  const MatchResult m = match(ode, b, cfg.r_min, cfg.tol_ode);
  OracleResult res;
  res.epsilon = eps;
  res.node_count = m.nodes;
  res.match_residual = std::abs(m.w);
  res.error_estimate = cfg.tol_eig * std::abs(eps);
  res.wavefunction = matched_samples(ode, b, m, cfg.r_min, std::max(cfg.samples, 2), cfg.tol_ode);
  return res;
}

namespace {

struct FdGrid {
  double t_lo, h;
  int intervals;
};

struct FdOperator {
  std::vector<double> diag;  // interior points 1..intervals-1
  double off;                // -1/h^2
  double rho;                // v_0 = rho v_1
};

FdOperator fd_operator(const RadialODE& ode, const FdGrid& g) {
  const LocalCoefficients lc = local_coefficients(ode, std::min(1e-5, 0.1 * std::exp(g.t_lo)));
  const double P0 = lc.p0 - 1.0;
  const double beta2 = 0.25 * P0 * P0 - lc.q0;
  if (beta2 < 0.0) throw IntegrationError("complex Frobenius indices at the origin");
  const double beta = std::sqrt(beta2);
  FdOperator op;
  const double h2 = g.h * g.h;
  op.off = -1.0 / h2;
  op.rho = std::exp(-beta * g.h);
  op.diag.resize(g.intervals - 1);
  for (int i = 1; i < g.intervals; ++i) op.diag[i - 1] = 2.0 / h2 - q_liouville(ode, g.t_lo + i * g.h);
  op.diag[0] -= op.rho / h2;
  return op;
}

int sturm_count(const FdOperator& op) {
  int neg = 0;
  double piv = 0.0;
  const double e2 = op.off * op.off;
  for (std::size_t i = 0; i < op.diag.size(); ++i) {
    piv = (i == 0) ? op.diag[0] : op.diag[i] - e2 / piv;
    if (piv == 0.0) piv = -std::numeric_limits<double>::epsilon() * std::abs(op.diag[i]);
    if (piv < 0.0) ++neg;
  }
  return neg;
}

int count_at(const OdeFamily& family, double eps, const FdGrid& g) {
  return sturm_count(fd_operator(family(eps), g));
}

// Smallest energy where the count on this grid exceeds k.
double fd_level(const OdeFamily& family, const FdGrid& g, int k, double lo, double hi) {
  if (count_at(family, lo, g) > k || count_at(family, hi, g) <= k)
    throw BracketError("finite-difference bracket does not enclose level " + std::to_string(k));
  for (int it = 0; it < 200; ++it) {
    if (hi - lo <= 4e-16 * std::max(std::abs(lo), std::abs(hi))) break;
    const double mid = 0.5 * (lo + hi);
    if (count_at(family, mid, g) <= k)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double fd_level_near(const OdeFamily& family, const FdGrid& g, int k, double guess, double lo_lim, double hi_lim) {
  double d = 1e-9 * std::max(std::abs(guess), std::abs(hi_lim - lo_lim));
  for (int it = 0; it < 80; ++it) {
    const double lo = std::max(lo_lim, guess - d), hi = std::min(hi_lim, guess + d);
    if (count_at(family, lo, g) <= k && count_at(family, hi, g) > k) return fd_level(family, g, k, lo, hi);
    d *= 4.0;
  }
  return fd_level(family, g, k, lo_lim, hi_lim);
}

RadialSamples fd_samples(const RadialODE& ode, const FdGrid& g, int samples, int& nodes) {
  const FdOperator op = fd_operator(ode, g);
  const int n = g.intervals;
  const double h2 = g.h * g.h;
  std::vector<double> qd(n + 1, 0.0);
  for (int i = 1; i < n; ++i) qd[i] = q_liouville(ode, g.t_lo + i * g.h);
  // outward from the Robin end, inward from the Dirichlet end, joined at the last allowed point
  int im = n / 2;
  for (int i = n - 1; i > 0; --i)
    if (qd[i] > 0.0) {
      im = i;
      break;
    }
  im = std::clamp(im, 2, n - 2);
  std::vector<double> v(n + 1, 0.0);
  v[0] = op.rho;
  v[1] = 1.0;
  for (int i = 1; i < im; ++i) v[i + 1] = (2.0 - h2 * qd[i]) * v[i] - v[i - 1];
  std::vector<double> w(n + 1, 0.0);
  w[n] = 0.0;
  w[n - 1] = 1e-300;
  for (int i = n - 1; i > im; --i) {
    w[i - 1] = (2.0 - h2 * qd[i]) * w[i] - w[i + 1];
    if (std::abs(w[i - 1]) > 1e250) {
      for (int k = i - 1; k <= n; ++k) w[k] *= 1e-250;
    }
  }
  const double scale = v[im] / w[im];
  for (int i = im + 1; i <= n; ++i) v[i] = scale * w[i];
  nodes = 0;
  for (int i = 1; i < n; ++i)
    if ((v[i] > 0.0 && v[i + 1] < 0.0) || (v[i] < 0.0 && v[i + 1] > 0.0)) ++nodes;
  // u = v exp(-1/2 int P dt)
  std::vector<double> u(n + 1), r(n + 1);
  double integral = 0.0;
  double prevP = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double t = g.t_lo + i * g.h;
    r[i] = std::exp(t);
    const double P = r[i] * ode.p(r[i]) - 1.0;
    if (i > 0) integral += 0.5 * g.h * (P + prevP);
    prevP = P;
    u[i] = v[i] * std::exp(-0.5 * integral);
  }
  RadialSamples s;
  double mx = 0.0;
  for (double x : u) mx = std::max(mx, std::abs(x));
  const int stride = std::max(1, n / std::max(samples - 1, 1));
  for (int i = 0; i <= n; i += stride) {
    const int ip = std::min(i + 1, n), im1 = std::max(i - 1, 0);
    s.r.push_back(r[i]);
    s.u.push_back(u[i] / mx);
    s.du.push_back((u[ip] - u[im1]) / (r[ip] - r[im1]) / mx);
  }
  return s;
}

}  // namespace

int fd_sturm_count(const OdeFamily& family, double epsilon, double r_min, double r_max, int intervals) {
  const double t_lo = std::log(r_min), t_hi = std::log(r_max);
  return count_at(family, epsilon, {t_lo, (t_hi - t_lo) / intervals, intervals});
}

std::vector<OracleResult> fd_matrix_eigen(const OdeFamily& family, const FdConfig& cfg, int k_lowest) {
  if (cfg.grid_size < 200) throw std::invalid_argument("fd_matrix_eigen: grid_size must be at least 200");
  if (k_lowest < 1) throw std::invalid_argument("fd_matrix_eigen: k_lowest must be positive");
  if (!(cfg.eps_lo < cfg.eps_hi)) throw std::invalid_argument("fd_matrix_eigen: empty energy bracket");
  if (!(cfg.r_min > 0.0)) throw std::invalid_argument("fd_matrix_eigen: r_min must be positive");
  const double t_lo = std::log(cfg.r_min);
  auto grid_for = [&](double r_max, int intervals) {
    const double t_hi = std::log(r_max);
    return FdGrid{t_lo, (t_hi - t_lo) / intervals, intervals};
  };
  auto r_max_for = [&](double eps) {
    return cfg.r_max > 0.0 ? cfg.r_max : decay_boundary(family(eps), cfg.decay_lengths, cfg.r_max_cap);
  };

  std::vector<OracleResult> out;
  const FdGrid coarse = grid_for(r_max_for(cfg.eps_hi), cfg.grid_size);
  for (int k = 0; k < k_lowest; ++k) {
    const double guess = fd_level(family, coarse, k, cfg.eps_lo, cfg.eps_hi);
    const double r_max = r_max_for(guess);
    double e[3];
    FdGrid finest{};
    for (int g = 0; g < 3; ++g) {
      const FdGrid grid = grid_for(r_max, cfg.grid_size << g);
      e[g] = fd_level_near(family, grid, k, g == 0 ? guess : e[g - 1], cfg.eps_lo, cfg.eps_hi);
      finest = grid;
    }
    const double r1 = (4.0 * e[1] - e[0]) / 3.0;
    const double r2 = (4.0 * e[2] - e[1]) / 3.0;
    const double best = (16.0 * r2 - r1) / 15.0;
    const double err = std::abs(best - r2);
    const double d01 = e[0] - e[1], d12 = e[1] - e[2];
    const double noise = 1e-13 * std::abs(e[2]);
    if (std::abs(d12) > noise && std::abs(d01) > noise) {
      const double ratio = d01 / d12;
      if (!(ratio > 2.0 && ratio < 8.0))
        throw std::runtime_error("fd_matrix_eigen: extrapolation not convergent (ratio " + std::to_string(ratio) +
                                 ")");
    }
    if (err > cfg.max_extrapolation_error * std::max(std::abs(best), std::numeric_limits<double>::min()))
      throw std::runtime_error("fd_matrix_eigen: extrapolation error estimate too large");
    OracleResult res;
    res.epsilon = best;
    res.error_estimate = err;
    res.wavefunction = fd_samples(family(e[2]), finest, cfg.samples, res.node_count);
    out.push_back(std::move(res));
  }
  return out;
}

}  // namespace dkp
