#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <variant>

#include "dkp/branches.hpp"
#include "dkp/field_reconstruct.hpp"
#include "dkp/radial_eqs.hpp"
#include "dkp/verify.hpp"

namespace dkp::cli {
namespace {

using json = nlohmann::ordered_json;
constexpr int kSchemaVersion = 1;

class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Range {
  int lo = 0, hi = 0;
  std::vector<int> values() const {
    std::vector<int> v;
    for (int i = lo; i <= hi; ++i) v.push_back(i);
    return v;
  }
  json to_json() const { return lo == hi ? json(lo) : json(values()); }
  std::string text() const { return lo == hi ? std::to_string(lo) : std::to_string(lo) + ".." + std::to_string(hi); }
};

Range parse_range(const std::string& s, const char* what) {
  auto to_int = [&](const std::string& t) {
    std::size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(t, &pos);
    } catch (const std::exception&) {
      pos = std::string::npos;
    }
    if (pos != t.size()) throw ValidationError(std::string(what) + ": '" + s + "' is not an integer or a..b range");
    return v;
  };
  Range r;
  const auto dots = s.find("..");
  if (dots == std::string::npos) {
    r.lo = r.hi = to_int(s);
  } else {
    r.lo = to_int(s.substr(0, dots));
    r.hi = to_int(s.substr(dots + 2));
  }
  if (r.hi < r.lo) throw ValidationError(std::string(what) + ": empty range '" + s + "'");
  if (r.lo < 0) throw ValidationError(std::string(what) + ": values must be non-negative");
  return r;
}

// Table output shared by every command.
using Cell = std::variant<std::monostate, double, long long, std::string, bool>;

struct Table {
  json meta = json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string o = "\"";
  for (char c : s) {
    if (c == '"') o += '"';
    o += c;
  }
  return o + "\"";
}

std::string cell_text(const Cell& c) {
  struct V {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(double d) const { return format_double(d); }
    std::string operator()(long long i) const { return std::to_string(i); }
    std::string operator()(const std::string& s) const { return csv_escape(s); }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
  };
  return std::visit(V{}, c);
}

json cell_json(const Cell& c) {
  struct V {
    json operator()(std::monostate) const { return nullptr; }
    json operator()(double d) const { return std::isfinite(d) ? json(d) : json(format_double(d)); }
    json operator()(long long i) const { return i; }
    json operator()(const std::string& s) const { return s; }
    json operator()(bool b) const { return b; }
  };
  return std::visit(V{}, c);
}

std::string meta_text(const json& v) {
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_string()) return csv_escape(v.get<std::string>());
  if (v.is_array()) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : " ") + meta_text(x);
    return csv_escape(s);
  }
  return v.dump();
}

void write_json(const Table& t, std::ostream& os) {
  json doc = json::object();
  doc["schema_version"] = kSchemaVersion;
  for (const auto& [k, v] : t.meta.items()) doc[k] = v;
  json rows = json::array();
  for (const auto& r : t.rows) {
    json o = json::object();
    for (std::size_t i = 0; i < t.columns.size(); ++i) o[t.columns[i]] = cell_json(r[i]);
    rows.push_back(std::move(o));
  }
  doc["rows"] = std::move(rows);
  os << doc.dump(2) << '\n';
}

void write_csv(const Table& t, std::ostream& os) {
  std::string line = "schema_version";
  for (const auto& [k, v] : t.meta.items()) line += "," + k;
  for (const auto& c : t.columns) line += "," + c;
  os << line << '\n';
  std::string prefix = std::to_string(kSchemaVersion);
  for (const auto& [k, v] : t.meta.items()) prefix += "," + meta_text(v);
  for (const auto& r : t.rows) {
    line = prefix;
    for (const auto& c : r) line += "," + cell_text(c);
    os << line << '\n';
  }
}

struct Sink {
  std::string format = "json";
  std::string output;

  void emit(const Table& t, std::ostream& out) const {
    std::ofstream file;
    std::ostream* os = &out;
    if (!output.empty()) {
      file.open(output, std::ios::binary);
      if (!file) throw ValidationError("cannot open output file '" + output + "'");
      os = &file;
    }
    if (format == "csv")
      write_csv(t, *os);
    else
      write_json(t, *os);
  }
};

void add_sink_options(CLI::App* app, Sink& sink) {
  app->add_option("--format", sink.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app->add_option("-o,--output", sink.output, "write to a file instead of stdout");
}

// ---- spectrum / scan ----

struct LevelRequest {
  Branch branch;
  double alpha;
  int j;
  int n;
};

struct OracleFlags {
  bool shooting = false;
  bool fd = false;
};

std::vector<std::string> spectrum_columns(const OracleFlags& f) {
  std::vector<std::string> c = {"branch", "alpha", "j", "n", "e_over_mc2", "n_effective", "nonrel_limit"};
  if (f.shooting) c.insert(c.end(), {"oracle_e_over_mc2", "oracle_rel_dev", "oracle_nodes"});
  if (f.fd) c.insert(c.end(), {"fd_e_over_mc2", "fd_rel_dev", "fd_nodes"});
  if (f.shooting || f.fd) c.push_back("status");
  return c;
}

std::vector<Cell> spectrum_row(const LevelRequest& q, double mass, const OracleFlags& f) {
  const EnergyLevel lv = closed_form_level(q.branch, q.alpha, q.j, q.n);
  std::vector<Cell> row = {std::string(to_string(q.branch)), q.alpha, static_cast<long long>(q.j),
                           static_cast<long long>(q.n), lv.e_over_mc2, lv.n_effective};
  row.push_back(is_relativistic(q.branch) ? Cell(nonrel_limit(lv)) : Cell());
  std::string status = "ok";
  auto fill = [&](bool on, auto&& solve) {
    if (!on) return;
    try {
      const OracleResult r = solve();
      const double e = to_e_over_mc2(q.branch, r.epsilon, mass);
      row.insert(row.end(), {e, relative_deviation(e, lv.e_over_mc2), static_cast<long long>(r.node_count)});
    } catch (const std::exception& ex) {
      row.insert(row.end(), {Cell(), Cell(), Cell()});
      status = std::string("no eigenvalue: ") + ex.what();
    }
  };
  fill(f.shooting, [&] { return shoot_level(q.branch, q.alpha, q.j, q.n, mass); });
  fill(f.fd, [&] {
    auto levels = fd_levels(q.branch, q.alpha, q.j, q.n + 1, mass);
    return levels.at(q.n);
  });
  if (f.shooting || f.fd) row.push_back(status);
  return row;
}

unsigned thread_cap() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("DKP_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) n = static_cast<unsigned>(v);
  }
  return n;
}

// Rows come back in request order regardless of scheduling.
std::vector<std::vector<Cell>> compute_rows(const std::vector<LevelRequest>& reqs, double mass,
                                            const OracleFlags& flags) {
  std::vector<std::vector<Cell>> rows(reqs.size());
  std::vector<std::string> errors(reqs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < reqs.size(); i = next++) {
      try {
        rows[i] = spectrum_row(reqs[i], mass, flags);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  const unsigned n = std::min<std::size_t>(thread_cap(), std::max<std::size_t>(reqs.size(), 1));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (!e.empty()) throw ValidationError(e);
  return rows;
}

void check_alpha(double alpha, double mass) {
  if (!(alpha >= 0.0)) throw ValidationError("--alpha must be non-negative");
  if (!(mass > 0.0)) throw ValidationError("--mass must be positive");
}

// ---- wavefn ----

Table wavefn_table(Branch branch, double alpha, int j, int n, double mass, int points, bool closed_form,
                   double r_lo, double r_hi) {
  if (points < 2) throw ValidationError("--points must be at least 2 (empty grid)");
  const EnergyLevel lv = closed_form_level(branch, alpha, j, n);
  const OdeFamily family = branch_family(branch, alpha, j, mass);
  double eps = lv.e_over_mc2 * mass;
  RadialSamples s;
  // the jzero family runs in x = eps r
  const double var_scale = branch == Branch::JZero ? eps : 1.0;
  if (closed_form) {
    const RadialODE ode = family(eps);
    double hi = r_hi > 0.0 ? r_hi : decay_boundary(ode, 40.0, 1e6) / var_scale;
    double lo = r_lo > 0.0 ? r_lo : 1e-3 * hi;
    if (!(hi > lo)) throw ValidationError("--r-max must exceed --r-min");
    std::vector<double> grid(points);
    for (int i = 0; i < points; ++i) grid[i] = var_scale * lo * std::pow(hi / lo, i / double(points - 1));
    s = regular_solution(ode, grid, std::min(1e-4, 0.5 * grid.front()));
  } else {
    OracleResult res;
    try {
      ShootingConfig cfg = default_shooting(branch, n, mass);
      cfg.samples = points;
      res = shoot_eigenvalue(family, cfg);
    } catch (const std::exception& e) {
      throw std::runtime_error(std::string("non-converged eigenvalue: ") + e.what());
    }
    eps = res.epsilon;
    s = std::move(res.wavefunction);
  }
  const double vs = branch == Branch::JZero ? eps : 1.0;
  for (auto& r : s.r) r /= vs;
  for (auto& d : s.du) d *= vs;

  Table t;
  t.meta["alpha"] = alpha;
  t.meta["M"] = mass;
  t.meta["branch"] = to_string(branch);
  t.meta["j"] = j;
  t.meta["n"] = n;
  t.meta["e_over_mc2"] = eps / mass;
  t.meta["energy_source"] = closed_form ? "closed-form" : "oracle";
  if (branch != Branch::HeunBranch) {
    t.columns = {"r", "u", "du"};
    for (std::size_t i = 0; i < s.r.size(); ++i) t.rows.push_back({s.r[i], s.u[i], s.du[i]});
    return t;
  }
  const CoulombParams p(alpha, j, Parity::MinusToJ, mass);
  const FieldProfile fp = reconstruct(s.r, s.u, s.du, p, eps);
  const ResidualProfile lor = lorentz_residual(fp, p, eps);
  const auto sys = system_residuals(fp, p, eps);
  auto rel = [](const ResidualProfile& rp, std::size_t i) {
    return rp.scale[i] > 0.0 ? std::abs(rp.value[i]) / rp.scale[i] : std::abs(rp.value[i]);
  };
  t.columns = {"r", "phi0", "dphi0", "e1", "e2", "phi1", "phi2", "h1", "lorentz_residual"};
  for (std::size_t k = 0; k < sys.size(); ++k) t.columns.push_back("eq" + std::to_string(k + 1) + "_residual");
  for (std::size_t i = 0; i < fp.r.size(); ++i) {
    std::vector<Cell> row = {fp.r[i], fp.phi0[i], fp.dphi0[i], fp.e1[i], fp.e2[i], fp.phi1[i], fp.phi2[i], fp.h1[i],
                             rel(lor, i)};
    for (const auto& rp : sys) row.push_back(rel(rp, i));
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coulomb bound states of a spin-1 particle: spectra, wavefunctions and self-checks", "dkp"};
  app.require_subcommand(1);

  double alpha = 0.1, mass = 1.0;
  std::string j_text = "0", n_text = "0", branch_text = "scalar";
  OracleFlags flags;
  Sink sink;

  auto* spectrum = app.add_subcommand("spectrum", "closed-form levels, optionally checked by the oracle");
  spectrum->add_option("--alpha", alpha, "coupling constant")->required();
  spectrum->add_option("--j", j_text, "j or a..b range");
  spectrum->add_option("--n", n_text, "n or a..b range");
  spectrum->add_option("--branch", branch_text, "scalar, jzero, heun, nonrel-minus, nonrel-plus, nonrel-big");
  spectrum->add_option("--mass", mass, "M = mc/hbar");
  spectrum->add_flag("--oracle", flags.shooting, "add shooting eigenvalues");
  spectrum->add_flag("--fd", flags.fd, "add finite-difference eigenvalues");
  add_sink_options(spectrum, sink);

  int points = 400;
  bool closed_form = false;
  double r_lo = 0.0, r_hi = 0.0;
  auto* wavefn = app.add_subcommand("wavefn", "radial function of one level on a log grid");
  wavefn->add_option("--alpha", alpha)->required();
  wavefn->add_option("--j", j_text);
  wavefn->add_option("--n", n_text);
  wavefn->add_option("--branch", branch_text);
  wavefn->add_option("--mass", mass);
  wavefn->add_option("--points", points, "grid size");
  wavefn->add_option("--r-min", r_lo, "first grid point (closed-form energy only)");
  wavefn->add_option("--r-max", r_hi, "last grid point (closed-form energy only)");
  wavefn->add_flag("--closed-form-energy", closed_form, "integrate at the closed-form energy instead of shooting");
  add_sink_options(wavefn, sink);

  bool list = false;
  double perturb = 0.0;
  std::vector<std::string> only;
  auto* verify = app.add_subcommand("verify", "run the acceptance checks");
  verify->add_flag("--list", list, "print the checks without running them");
  verify->add_option("--perturb", perturb, "shift Heun energies by -perturb*M in the polynomial-condition check");
  verify->add_option("--criterion", only, "run only these ids");
  verify->add_option("-o,--output", sink.output);

  std::vector<double> alphas;
  std::vector<std::string> branches;
  auto* scan = app.add_subcommand("scan", "closed-form (and oracle) levels over a parameter grid, in parallel");
  scan->add_option("--alpha", alphas, "comma-separated couplings")->required()->delimiter(',');
  scan->add_option("--j", j_text);
  scan->add_option("--n", n_text);
  scan->add_option("--branch", branches, "comma-separated branches (default: all)")->delimiter(',');
  scan->add_option("--mass", mass);
  scan->add_flag("--oracle", flags.shooting);
  scan->add_flag("--fd", flags.fd);
  add_sink_options(scan, sink);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (spectrum->parsed()) {
      check_alpha(alpha, mass);
      const Branch b = parse_branch(branch_text);
      const Range jr = parse_range(j_text, "--j"), nr = parse_range(n_text, "--n");
      std::vector<LevelRequest> reqs;
      for (int j : jr.values()) {
        closed_form_level(b, alpha, j, nr.lo);  // validates the branch/j combination up front
        for (int n : nr.values()) reqs.push_back({b, alpha, j, n});
      }
      Table t;
      t.meta["alpha"] = alpha;
      t.meta["M"] = mass;
      t.meta["branch"] = to_string(b);
      t.meta["j"] = jr.to_json();
      t.meta["n"] = nr.to_json();
      t.columns = spectrum_columns(flags);
      t.rows = compute_rows(reqs, mass, flags);
      sink.emit(t, out);
      return kExitOk;
    }
    if (scan->parsed()) {
      for (double a : alphas) check_alpha(a, mass);
      std::vector<Branch> bs;
      if (branches.empty())
        bs = {Branch::ScalarLike, Branch::JZero, Branch::HeunBranch, Branch::NonRelMinus, Branch::NonRelPlus,
              Branch::NonRelBig};
      for (const auto& s : branches) bs.push_back(parse_branch(s));
      const Range jr = parse_range(j_text, "--j"), nr = parse_range(n_text, "--n");
      std::vector<LevelRequest> reqs;
      for (Branch b : bs)
        for (double a : alphas)
          for (int j : jr.values()) {
            try {
              closed_form_level(b, a, j, nr.lo);
            } catch (const std::invalid_argument&) {
              continue;  // branch does not admit this j
            }
            for (int n : nr.values()) reqs.push_back({b, a, j, n});
          }
      Table t;
      json al = json::array();
      for (double a : alphas) al.push_back(a);
      json bl = json::array();
      for (Branch b : bs) bl.push_back(to_string(b));
      t.meta["alpha"] = al;
      t.meta["M"] = mass;
      t.meta["branch"] = bl;
      t.meta["j"] = jr.to_json();
      t.meta["n"] = nr.to_json();
      t.columns = spectrum_columns(flags);
      t.rows = compute_rows(reqs, mass, flags);
      sink.emit(t, out);
      return kExitOk;
    }
    if (wavefn->parsed()) {
      check_alpha(alpha, mass);
      const Branch b = parse_branch(branch_text);
      const Range jr = parse_range(j_text, "--j"), nr = parse_range(n_text, "--n");
      if (jr.lo != jr.hi || nr.lo != nr.hi) throw ValidationError("wavefn takes a single j and n");
      sink.emit(wavefn_table(b, alpha, jr.lo, nr.lo, mass, points, closed_form, r_lo, r_hi), out);
      return kExitOk;
    }
    if (verify->parsed()) {
      const auto all = list_criteria();
      if (list) {
        for (const auto& c : all) out << c.id << "  " << c.title << '\n';
        return kExitOk;
      }
      for (const auto& id : only)
        if (std::none_of(all.begin(), all.end(), [&](const CriterionInfo& c) { return c.id == id; }))
          throw ValidationError("unknown criterion '" + id + "'");
      const VerifyOptions opt{perturb};
      std::vector<CriterionResult> results;
      if (only.empty()) {
        results = run_all_criteria(opt);
      } else {
        for (const auto& id : only) results.push_back(run_criterion(id, opt));
      }
      json doc = json::object();
      doc["schema_version"] = kSchemaVersion;
      doc["perturb"] = perturb;
      bool ok = true;
      json arr = json::array();
      for (const auto& r : results) {
        ok = ok && r.passed;
        arr.push_back({{"id", r.id},
                       {"title", r.title},
                       {"measured", cell_json(r.measured)},
                       {"tolerance", r.tolerance},
                       {"passed", r.passed},
                       {"detail", r.detail}});
      }
      doc["criteria"] = std::move(arr);
      doc["passed"] = ok;
      if (sink.output.empty()) {
        out << doc.dump(2) << '\n';
      } else {
        std::ofstream f(sink.output, std::ios::binary);
        if (!f) throw ValidationError("cannot open output file '" + sink.output + "'");
        f << doc.dump(2) << '\n';
      }
      return ok ? kExitOk : kExitVerification;
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace dkp::cli
