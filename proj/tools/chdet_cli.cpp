// This file is part of chdet.
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end.  Talks to the library exclusively through the
// shared-library C interface (chdet/chdet.h).
//
//   chdet reproduce --example N [...]   trade-off curves as CSV + gnuplot
//   chdet design [...]                  one design as a JSON-lines record
//   chdet simulate --design FILE [...]  Monte Carlo report as CSV
//
// CSV output is UTF-8, comma-separated, '.' decimal, one mandatory header
// row; NaN cells are empty.  Exit codes: 0 success, 1 numeric failure,
// 2 usage error.

#include <chdet/chdet.h>

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

using nlohmann::json;

namespace {

// Semantic command-line misuse (bad combination, malformed file, ...) that
// CLI11 itself cannot catch; mapped to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

[[noreturn]] void fail_numeric(const std::string& context) {
  throw NumericError(context + ": " + chdet_last_error());
}

// ---------------------------------------------------------------------------
// Formatting

// CSV cell: empty for NaN, "%.12g" otherwise ("inf"/"-inf" pass through).
std::string cell(double x) {
  if (std::isnan(x)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// RFC-4180 quoting for free-text cells (error messages may hold commas).
std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string join(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += cells[i];
  }
  out += '\n';
  return out;
}

// JSON value for a double; infinities and NaN travel as strings because
// JSON numbers cannot carry them.
json jnum(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

double jnum_back(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return HUGE_VAL;
    if (s == "-inf") return -HUGE_VAL;
    return std::nan("");
  }
  throw UsageError("expected a number in the design record");
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw NumericError("cannot open output file: " + path);
  return f;
}

// "curve.csv" -> "curve"; used to derive sibling file names.
std::string stem_of(const std::string& path) {
  if (path.size() > 4 && path.compare(path.size() - 4, 4, ".csv") == 0)
    return path.substr(0, path.size() - 4);
  return path;
}

// ---------------------------------------------------------------------------
// Noise handles

struct Noise {
  chdet_noise* h = nullptr;
  Noise() = default;
  explicit Noise(chdet_noise* p) : h(p) {}
  Noise(const Noise&) = delete;
  Noise& operator=(const Noise&) = delete;
  Noise(Noise&& o) noexcept : h(o.h) { o.h = nullptr; }
  Noise& operator=(Noise&& o) noexcept {
    if (this != &o) {
      chdet_noise_free(h);
      h = o.h;
      o.h = nullptr;
    }
    return *this;
  }
  ~Noise() { chdet_noise_free(h); }
  operator const chdet_noise*() const { return h; }
};

// Builds a noise handle from its JSON description.  The same description is
// embedded in design records so that `simulate` is self-contained.
Noise make_noise(const json& spec) {
  if (!spec.is_object() || !spec.contains("kind"))
    throw UsageError("noise description must be an object with a kind");
  const std::string kind = spec.at("kind").get<std::string>();
  chdet_noise* h = nullptr;
  chdet_status st = CHDET_OK;
  if (kind == "gaussian") {
    st = chdet_noise_gaussian(spec.at("variance").get<double>(), &h);
  } else if (kind == "laplace") {
    st = chdet_noise_laplace(spec.at("q").get<double>(), &h);
  } else if (kind == "uniform") {
    st = chdet_noise_uniform(spec.at("half_width").get<double>(), &h);
  } else if (kind == "binary") {
    st = chdet_noise_binary(spec.at("magnitude").get<double>(), &h);
  } else if (kind == "sum") {
    const json& terms = spec.at("terms");
    if (!terms.is_array() || terms.size() < 2)
      throw UsageError("sum noise needs at least two terms");
    Noise acc = make_noise(terms[0]);
    for (std::size_t i = 1; i < terms.size(); ++i) {
      Noise next = make_noise(terms[i]);
      chdet_noise* combined = nullptr;
      if (chdet_noise_sum(acc, next, &combined) != CHDET_OK)
        fail_numeric("building sum noise");
      acc = Noise(combined);
    }
    return acc;
  } else {
    throw UsageError("unknown noise kind: " + kind);
  }
  if (st != CHDET_OK) fail_numeric("building " + kind + " noise");
  return Noise(h);
}

json laplace_spec(double q) { return {{"kind", "laplace"}, {"q", q}}; }
json uniform_spec(double B) { return {{"kind", "uniform"}, {"half_width", B}}; }
json binary_spec(double z0) { return {{"kind", "binary"}, {"magnitude", z0}}; }
json gaussian_spec(double var) {
  return {{"kind", "gaussian"}, {"variance", var}};
}
json sum_spec(json a, json b) {
  return {{"kind", "sum"}, {"terms", json::array({std::move(a), std::move(b)})}};
}

// ---------------------------------------------------------------------------
// Record (de)serialization

json design_to_json(const chdet_design& d) {
  json atoms = json::array();
  for (std::size_t i = 0; i < d.n_atoms; ++i)
    atoms.push_back({{"w", d.atoms[i].w},
                     {"s", d.atoms[i].s},
                     {"prob", d.atoms[i].prob}});
  return {{"atoms", std::move(atoms)}, {"gamma", d.gamma}, {"theta", d.theta}};
}

chdet_design design_from_json(const json& j) {
  chdet_design d;
  std::memset(&d, 0, sizeof(d));
  const json& atoms = j.at("atoms");
  if (!atoms.is_array() || atoms.empty() || atoms.size() > CHDET_MAX_ATOMS)
    throw UsageError("design record has a bad atom list");
  d.n_atoms = atoms.size();
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    d.atoms[i].w = atoms[i].at("w").get<double>();
    d.atoms[i].s = atoms[i].at("s").get<double>();
    d.atoms[i].prob = atoms[i].at("prob").get<double>();
  }
  d.gamma = j.at("gamma").get<double>();
  d.theta = j.at("theta").get<double>();
  return d;
}

json point_to_json(const chdet_point& p) {
  return {{"e0", jnum(p.e0)},
          {"e_fa", jnum(p.e_fa)},
          {"e_md", jnum(p.e_md)},
          {"alpha_star", jnum(p.alpha_star)},
          {"lambda_star", jnum(p.lambda_star)},
          {"gamma_star", jnum(p.gamma_star)},
          {"theta_star", jnum(p.theta_star)}};
}

chdet_point point_from_json(const json& j) {
  chdet_point p;
  p.e0 = jnum_back(j.at("e0"));
  p.e_fa = jnum_back(j.at("e_fa"));
  p.e_md = jnum_back(j.at("e_md"));
  p.alpha_star = jnum_back(j.at("alpha_star"));
  p.lambda_star = jnum_back(j.at("lambda_star"));
  p.gamma_star = jnum_back(j.at("gamma_star"));
  p.theta_star = jnum_back(j.at("theta_star"));
  return p;
}

// ---------------------------------------------------------------------------
// Shared option plumbing

struct CommonOpts {
  double a = std::nan("");
  double q = std::nan("");
  double z0 = std::nan("");
  double B = std::nan("");
  double Ps = std::nan("");
};

void add_noise_flags(CLI::App* cmd, CommonOpts* o) {
  cmd->add_option("--a", o->a, "signal amplitude");
  cmd->add_option("--q", o->q, "Laplace noise scale");
  cmd->add_option("--z0", o->z0, "binary interferer magnitude");
  cmd->add_option("--B", o->B, "uniform noise half-width");
  cmd->add_option("--Ps", o->Ps, "signal power budget for joint modes");
}

chdet_config config_for(chdet_curve_mode mode, const CommonOpts& o) {
  chdet_config cfg;
  chdet_config_defaults(mode, &cfg);
  if (!std::isnan(o.a)) cfg.a = o.a;
  if (!std::isnan(o.q)) cfg.q = o.q;
  if (!std::isnan(o.z0)) cfg.z0 = o.z0;
  if (!std::isnan(o.B)) cfg.B = o.B;
  if (!std::isnan(o.Ps)) cfg.Ps = o.Ps;
  if (!(cfg.a > 0) || !(cfg.q > 0) || !(cfg.z0 > 0) || !(cfg.B > 0) ||
      !(cfg.Ps > 0))
    throw UsageError("all physical parameters must be positive");
  return cfg;
}

// ---------------------------------------------------------------------------
// reproduce

struct ReproduceOpts {
  int example = 0;
  CommonOpts noise;
  double e0_min = std::nan("");
  double e0_max = std::nan("");
  std::size_t e0_steps = 61;
  std::string out;
};

struct CurvePoint {
  bool ok = false;
  std::string message;
  chdet_point pt{};
  chdet_design design{};
};

using CurveFn = std::function<CurvePoint(double)>;

CurvePoint solve_curve_point(chdet_curve_mode mode, double e0,
                             const chdet_config& cfg) {
  CurvePoint r;
  const chdet_status st =
      chdet_solve_point(mode, e0, &cfg, &r.design, &r.pt);
  r.ok = st == CHDET_OK;
  if (!r.ok) r.message = chdet_last_error();
  return r;
}

// The atom that best summarizes a design for the CSV's w/s/p columns: the
// one with the largest signal level (largest weight if no signal).
void headline_atom(const chdet_design& d, double* w, double* s, double* p) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < d.n_atoms; ++i)
    if (d.atoms[i].s > d.atoms[best].s) best = i;
  if (d.atoms[best].s == 0.0) {
    for (std::size_t i = 1; i < d.n_atoms; ++i)
      if (d.atoms[i].w > d.atoms[best].w) best = i;
  }
  *w = d.atoms[best].w;
  *s = d.atoms[best].s;
  *p = d.atoms[best].prob;
}

void append_curve_cells(const CurvePoint& r, std::vector<std::string>* row) {
  if (!r.ok) {
    for (int i = 0; i < 7; ++i) row->push_back("");
    return;
  }
  double w = 0, s = 0, p = 0;
  headline_atom(r.design, &w, &s, &p);
  row->push_back(cell(r.pt.alpha_star));
  row->push_back(cell(r.pt.lambda_star));
  row->push_back(cell(r.pt.gamma_star));
  row->push_back(cell(w));
  row->push_back(cell(s));
  row->push_back(cell(p));
  row->push_back(cell(r.pt.theta_star));
}

void write_gnuplot(const std::string& gp_path, const std::string& csv_path,
                   const std::string& title_a, const std::string& title_b) {
  std::ofstream gp = open_out(gp_path);
  gp << "# gnuplot script; run:  gnuplot -persist " << gp_path << "\n"
     << "set datafile separator \",\"\n"
     << "set xlabel \"false-alarm exponent budget\"\n"
     << "set ylabel \"miss exponent\"\n"
     << "set key top left\n"
     << "plot \"" << csv_path << "\" using 1:2 with lines lw 2 title \""
     << title_a << "\", \\\n     \"" << csv_path
     << "\" using 1:3 with lines lw 2 title \"" << title_b << "\"\n";
}

int run_reproduce(const ReproduceOpts& o) {
  struct Scenario {
    chdet_curve_mode config_mode;  // which defaults apply
    double default_max;
    std::string label_a, label_b;
  };
  Scenario sc;
  switch (o.example) {
    case 1:
      sc = {CHDET_CURVE_LINEAR_FIXED, 15.0, "optimized correlator",
            "classical correlator"};
      break;
    case 2:
      sc = {CHDET_CURVE_LINEAR_FIXED, 15.0, "fixed four-level signal",
            "jointly optimized ternary signal"};
      break;
    case 3:
      sc = {CHDET_CURVE_ENERGY_FIXED, 3.0, "correlation only",
            "correlation plus energy"};
      break;
    case 4:
      sc = {CHDET_CURVE_ENERGY_FIXED, 4.0, "fixed ternary signal",
            "jointly optimized signal and energy weight"};
      break;
    default:
      throw UsageError("--example must be 1, 2, 3, or 4");
  }
  const chdet_config cfg = config_for(sc.config_mode, o.noise);

  const double lo = std::isnan(o.e0_min) ? 0.0 : o.e0_min;
  const double hi = std::isnan(o.e0_max) ? sc.default_max : o.e0_max;
  if (o.e0_steps < 1) throw UsageError("--e0-steps must be at least 1");
  if (o.e0_steps > 1 && !(hi > lo))
    throw UsageError("budget grid must be strictly increasing");
  std::vector<double> grid(o.e0_steps);
  for (std::size_t i = 0; i < o.e0_steps; ++i)
    grid[i] = o.e0_steps == 1
                  ? lo
                  : lo + (hi - lo) * double(i) / double(o.e0_steps - 1);

  // Example 3's first curve (plain correlation) runs the weight optimizer
  // directly on the ternary signal; everything else is a solver mode.
  Noise uni, uni_v;
  if (o.example == 3) {
    chdet_noise* h = nullptr;
    if (chdet_noise_uniform(cfg.B, &h) != CHDET_OK)
      fail_numeric("building uniform noise");
    uni = Noise(h);
    uni_v = make_noise(sum_spec(uniform_spec(cfg.B), binary_spec(cfg.z0)));
  }
  CurveFn curve_a, curve_b;
  switch (o.example) {
    case 1:
      curve_a = [&](double e0) {
        return solve_curve_point(CHDET_CURVE_LINEAR_FIXED, e0, cfg);
      };
      curve_b = [&](double e0) {
        return solve_curve_point(CHDET_CURVE_CLASSICAL, e0, cfg);
      };
      break;
    case 2:
      curve_a = [&](double e0) {
        return solve_curve_point(CHDET_CURVE_LINEAR_FIXED, e0, cfg);
      };
      curve_b = [&](double e0) {
        return solve_curve_point(CHDET_CURVE_LINEAR_JOINT, e0, cfg);
      };
      break;
    case 3:
      curve_a = [&](double e0) {
        CurvePoint r;
        chdet_atom sig[3] = {{0.0, -cfg.a, 0.25},
                             {0.0, 0.0, 0.5},
                             {0.0, cfg.a, 0.25}};
        const chdet_status st = chdet_optimal_weights(
            sig, 3, 0.0, e0, uni_v, uni, &r.design, &r.pt);
        r.ok = st == CHDET_OK;
        if (!r.ok) r.message = chdet_last_error();
        return r;
      };
      curve_b = [&](double e0) {
        return solve_curve_point(CHDET_CURVE_ENERGY_FIXED, e0, cfg);
      };
      break;
    case 4:
      curve_a = [&](double e0) {
        return solve_curve_point(CHDET_CURVE_ENERGY_FIXED, e0, cfg);
      };
      curve_b = [&](double e0) {
        return solve_curve_point(CHDET_CURVE_ENERGY_JOINT, e0, cfg);
      };
      break;
  }

  // Sweep the grid; points are independent, so spread them over a small
  // pool.  Rows land at their grid index, keeping output order fixed.
  struct Row {
    CurvePoint a, b;
  };
  std::vector<Row> rows(grid.size());
  const std::size_t workers = std::min<std::size_t>(
      std::max(1u, std::thread::hardware_concurrency()), grid.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next.fetch_add(1); i < grid.size();
         i = next.fetch_add(1)) {
      rows[i].a = curve_a(grid[i]);
      rows[i].b = curve_b(grid[i]);
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work);
    for (std::thread& th : pool) th.join();
  }

  const std::string csv_path =
      o.out.empty() ? "example" + std::to_string(o.example) + ".csv" : o.out;
  std::ostringstream body;
  body << "e0,e_md_a,e_md_b,alpha_a,lambda_a,gamma_a,w_a,s_a,p_a,theta_a,"
          "alpha_b,lambda_b,gamma_b,w_b,s_b,p_b,theta_b,status\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::vector<std::string> row;
    row.push_back(cell(grid[i]));
    row.push_back(rows[i].a.ok ? cell(rows[i].a.pt.e_md) : "");
    row.push_back(rows[i].b.ok ? cell(rows[i].b.pt.e_md) : "");
    append_curve_cells(rows[i].a, &row);
    append_curve_cells(rows[i].b, &row);
    std::string status;
    if (!rows[i].a.ok) status += "A: " + rows[i].a.message;
    if (!rows[i].b.ok)
      status += (status.empty() ? "" : "; ") + ("B: " + rows[i].b.message);
    row.push_back(csv_escape(status));
    body << join(row);
  }

  if (csv_path == "-") {
    std::cout << body.str();
    return 0;
  }
  open_out(csv_path) << body.str();
  write_gnuplot(stem_of(csv_path) + ".gp", csv_path, sc.label_a, sc.label_b);
  std::cerr << "wrote " << csv_path << " and " << stem_of(csv_path)
            << ".gp\n";

  if (o.example == 3) {
    // Companion file: the threshold/budget trade-off for the same setup.
    const std::string tpath = stem_of(csv_path) + "_theta.csv";
    std::ostringstream tb;
    tb << "e0,theta\n";
    for (double e0 : grid) {
      double theta = 0.0;
      if (chdet_threshold_point(e0, cfg.B, &theta) != CHDET_OK)
        fail_numeric("threshold curve");
      tb << cell(e0) << ',' << cell(theta) << '\n';
    }
    open_out(tpath) << tb.str();
    std::ofstream gp = open_out(stem_of(csv_path) + "_theta.gp");
    gp << "set datafile separator \",\"\n"
       << "set xlabel \"false-alarm exponent budget\"\n"
       << "set ylabel \"per-sample threshold\"\n"
       << "plot \"" << tpath << "\" using 1:2 with lines lw 2 title "
       << "\"threshold\"\n";
    std::cerr << "wrote " << tpath << " and " << stem_of(csv_path)
              << "_theta.gp\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// design

struct DesignOpts {
  CommonOpts noise;
  double e0 = 1.0;
  bool joint = false;
  bool gamma_free = false;
  bool gamma_zero = false;
  bool classical = false;
  std::string noise_family = "example";
  double var_v = 1.0;
  double var_n = 1.0;
  double tol = 1e-7;
  std::string out;
};

bool matches(double a, double b, double tol) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

int run_design(const DesignOpts& o) {
  if (o.gamma_free && o.gamma_zero)
    throw UsageError("--gamma-free and --gamma-zero are mutually exclusive");
  const bool energy = o.gamma_free;  // default is the plain correlator
  if (!(o.e0 >= 0)) throw UsageError("--e0 must be nonnegative");

  chdet_design d;
  chdet_point pt;
  json noise_v_spec, noise_n_spec;

  if (o.noise_family == "gaussian") {
    if (o.joint || energy || o.classical)
      throw UsageError(
          "gaussian noise supports only the fixed-signal plain correlator");
    if (!(o.var_v > 0) || !(o.var_n > 0))
      throw UsageError("variances must be positive");
    const double a = std::isnan(o.noise.a) ? 4.0 : o.noise.a;
    if (!(a > 0)) throw UsageError("--a must be positive");
    noise_v_spec = gaussian_spec(o.var_v);
    noise_n_spec = gaussian_spec(o.var_n);
    const Noise nv = make_noise(noise_v_spec);
    const Noise nn = make_noise(noise_n_spec);
    const chdet_atom sig[4] = {{0.0, -3.0 * a, 0.25},
                               {0.0, -a, 0.25},
                               {0.0, a, 0.25},
                               {0.0, 3.0 * a, 0.25}};
    if (chdet_optimal_weights(sig, 4, 0.0, o.e0, nv, nn, &d, &pt) !=
        CHDET_OK)
      fail_numeric("weight optimization");
  } else if (o.noise_family == "example") {
    chdet_curve_mode mode;
    if (o.classical) {
      if (o.joint || energy)
        throw UsageError("--classical only applies to the fixed-signal "
                         "plain correlator");
      mode = CHDET_CURVE_CLASSICAL;
    } else if (o.joint) {
      mode = energy ? CHDET_CURVE_ENERGY_JOINT : CHDET_CURVE_LINEAR_JOINT;
    } else {
      mode = energy ? CHDET_CURVE_ENERGY_FIXED : CHDET_CURVE_LINEAR_FIXED;
    }
    const chdet_config cfg = config_for(mode, o.noise);
    const chdet_status st = chdet_solve_point(mode, o.e0, &cfg, &d, &pt);
    if (st == CHDET_ERR_INFEASIBLE)
      throw NumericError(std::string("infeasible: ") + chdet_last_error());
    if (st != CHDET_OK) fail_numeric("design solve");
    const bool uniform_noise =
        mode == CHDET_CURVE_ENERGY_FIXED || mode == CHDET_CURVE_ENERGY_JOINT;
    noise_n_spec = uniform_noise ? uniform_spec(cfg.B) : laplace_spec(cfg.q);
    noise_v_spec = sum_spec(noise_n_spec, binary_spec(cfg.z0));
  } else {
    throw UsageError("--noise must be 'example' or 'gaussian'");
  }

  // Serialization fidelity: the emitted record must reproduce its stored
  // exponents when re-evaluated from scratch.
  const Noise nv = make_noise(noise_v_spec);
  const Noise nn = make_noise(noise_n_spec);
  chdet_point back;
  if (chdet_evaluate(&d, nv, nn, &back) != CHDET_OK)
    fail_numeric("record verification");
  if (!matches(back.e_fa, pt.e_fa, o.tol) ||
      !matches(back.e_md, pt.e_md, o.tol))
    throw NumericError("record verification: re-evaluated exponents differ "
                       "beyond --tol");

  json record = {{"design", design_to_json(d)},
                 {"point", point_to_json(pt)},
                 {"noise_v", noise_v_spec},
                 {"noise_n", noise_n_spec}};
  const std::string line = record.dump() + "\n";
  if (o.out.empty() || o.out == "-") {
    std::cout << line;
  } else {
    open_out(o.out) << line;
    std::cerr << "wrote " << o.out << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateOpts {
  std::string design_file;
  std::uint64_t n = 64;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  std::string out;
};

int run_simulate(const SimulateOpts& o) {
  if (o.n == 0) throw UsageError("--n must be at least 1");
  if (o.trials == 0) throw UsageError("--trials must be at least 1");

  std::ifstream in(o.design_file);
  if (!in) throw UsageError("cannot open design file: " + o.design_file);
  std::string line;
  if (!std::getline(in, line) || line.empty())
    throw UsageError("design file is empty: " + o.design_file);
  json record;
  try {
    record = json::parse(line);
  } catch (const json::exception& e) {
    throw UsageError("design file is not valid JSON: " +
                     std::string(e.what()));
  }

  chdet_design d;
  chdet_point predicted;
  Noise nv, nn;
  try {
    d = design_from_json(record.at("design"));
    predicted = point_from_json(record.at("point"));
    nv = make_noise(record.at("noise_v"));
    nn = make_noise(record.at("noise_n"));
  } catch (const json::exception& e) {
    throw UsageError("design record is incomplete: " + std::string(e.what()));
  }

  chdet_sim_report rep;
  if (chdet_simulate(&d, nv, nn, o.n, o.trials, o.seed, &rep) != CHDET_OK)
    fail_numeric("simulation");

  const double bound_fa = std::exp(-double(o.n) * predicted.e_fa);
  const double bound_md = std::exp(-double(o.n) * predicted.e_md);
  const bool fa_ok = rep.p_fa_hat <= bound_fa + 3.0 * rep.p_fa_stderr;
  const bool md_ok = rep.p_md_hat <= bound_md + 3.0 * rep.p_md_stderr;
  std::string status;
  if (rep.fa_insufficient_hits) status += "insufficient_fa_hits";
  if (rep.md_insufficient_hits)
    status += (status.empty() ? "" : ";") + std::string("insufficient_md_hits");
  if (status.empty()) status = "ok";

  std::ostringstream body;
  body << "n,trials,seed,p_fa_hat,p_fa_stderr,p_md_hat,p_md_stderr,"
          "empirical_efa,empirical_emd,predicted_efa,predicted_emd,"
          "bound_fa,bound_md,fa_within_bound,md_within_bound,status\n";
  body << o.n << ',' << o.trials << ',' << o.seed << ','
       << cell(rep.p_fa_hat) << ',' << cell(rep.p_fa_stderr) << ','
       << cell(rep.p_md_hat) << ',' << cell(rep.p_md_stderr) << ','
       << cell(rep.empirical_efa) << ',' << cell(rep.empirical_emd) << ','
       << cell(predicted.e_fa) << ',' << cell(predicted.e_md) << ','
       << cell(bound_fa) << ',' << cell(bound_md) << ','
       << (fa_ok ? "true" : "false") << ',' << (md_ok ? "true" : "false")
       << ',' << status << '\n';

  if (o.out.empty() || o.out == "-") {
    std::cout << body.str();
  } else {
    open_out(o.out) << body.str();
    std::cerr << "wrote " << o.out << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Design, evaluate, and simulate correlation and correlation+energy "
      "detectors for signals in non-Gaussian white noise"};
  app.require_subcommand(1);

  ReproduceOpts ro;
  CLI::App* rep = app.add_subcommand(
      "reproduce", "Sweep a trade-off curve pair to CSV plus a gnuplot "
                   "script (example 3 adds a threshold-curve companion)");
  rep->add_option("--example", ro.example, "scenario: 1, 2, 3, or 4")
      ->required();
  add_noise_flags(rep, &ro.noise);
  rep->add_option("--e0-min", ro.e0_min, "grid start (default 0)");
  rep->add_option("--e0-max", ro.e0_max,
                  "grid end (default 15, 15, 3, or 4 by example)");
  rep->add_option("--e0-steps", ro.e0_steps, "grid size (default 61)");
  rep->add_option("--out", ro.out,
                  "CSV path ('-' for stdout; default exampleN.csv)");

  DesignOpts dopt;
  CLI::App* des = app.add_subcommand(
      "design", "Solve one design and emit it as a JSON-lines record");
  add_noise_flags(des, &dopt.noise);
  des->add_option("--e0", dopt.e0, "false-alarm exponent budget");
  des->add_flag("--joint", dopt.joint,
                "optimize the signal jointly under the power budget");
  des->add_flag("--gamma-free", dopt.gamma_free,
                "allow an energy term in the statistic");
  des->add_flag("--gamma-zero", dopt.gamma_zero,
                "plain correlation statistic (default)");
  des->add_flag("--classical", dopt.classical,
                "weights proportional to the signal instead of optimized");
  des->add_option("--noise", dopt.noise_family,
                  "noise family: example (scenario defaults) or gaussian");
  des->add_option("--var-v", dopt.var_v, "gaussian variance under signal");
  des->add_option("--var-n", dopt.var_n, "gaussian variance under noise only");
  des->add_option("--tol", dopt.tol,
                  "record verification tolerance (default 1e-7)");
  des->add_option("--out", dopt.out, "output path (default stdout)");

  SimulateOpts so;
  CLI::App* sim = app.add_subcommand(
      "simulate", "Monte Carlo error rates for a stored design record");
  sim->add_option("--design", so.design_file, "JSON-lines design record file")
      ->required();
  sim->add_option("--n", so.n, "samples per trial block (default 64)");
  sim->add_option("--trials", so.trials, "trial count (default 100000)");
  sim->add_option("--seed", so.seed, "master random seed (default 1)");
  sim->add_option("--out", so.out, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (rep->parsed()) return run_reproduce(ro);
    if (des->parsed()) return run_design(dopt);
    if (sim->parsed()) return run_simulate(so);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
