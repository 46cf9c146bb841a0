// Copyright 2026 The opfid Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli_app.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "opfid/opfid.hpp"

namespace opfid::cli {
namespace {

using json = nlohmann::json;

// Failures writing or opening output files.
class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// JSON config files

// Reads a flat JSON object whose keys are long flag names without dashes,
// e.g. {"n": [7, 9], "t": 100, "method": "mixed"}. Keys go to the
// subcommand being run; an object keyed by that subcommand's name is also
// accepted so one file can hold settings for several subcommands.
class JsonConfig : public CLI::Config {
 public:
  explicit JsonConfig(const CLI::App* root) : root_(root) {}

  std::string to_config(const CLI::App*, bool, bool, std::string) const override {
    return "{}";
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    json doc;
    try {
      doc = json::parse(input);
    } catch (const json::exception& e) {
      throw CLI::ConversionError(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw CLI::ConversionError("config file must hold a JSON object");

    std::string active;
    if (const auto subs = root_->get_subcommands(); !subs.empty()) active = subs.front()->get_name();

    std::vector<CLI::ConfigItem> items;
    for (const auto& [key, value] : doc.items()) {
      if (key == "config") continue;
      if (value.is_object()) {
        if (key != active) continue;
        for (const auto& [k, v] : value.items()) items.push_back(item(active, k, v));
      } else {
        items.push_back(item(active, key, value));
      }
    }
    return items;
  }

 private:
  static std::string scalar(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number()) return v.dump();
    throw CLI::ConversionError("config values must be strings, numbers, booleans or arrays");
  }

  static CLI::ConfigItem item(const std::string& parent, const std::string& key, const json& v) {
    CLI::ConfigItem it;
    if (!parent.empty()) it.parents = {parent};
    it.name = key;
    if (v.is_array()) {
      for (const auto& e : v) it.inputs.push_back(scalar(e));
    } else {
      it.inputs.push_back(scalar(v));
    }
    return it;
  }

  const CLI::App* root_;
};

// ---------------------------------------------------------------------------
// Formatting

std::string fmt(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of negative zero
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return {buf.data(), res.ptr};
}

struct Row {
  std::string model;
  int n = 0;
  std::optional<double> t;
  std::string method;
  SweepRecord rec;
};

std::string csv(const std::vector<Row>& rows) {
  std::string s = kCsvHeader;
  s += '\n';
  for (const auto& r : rows) {
    const auto& c = r.rec;
    s += r.model + ',' + std::to_string(r.n) + ',' + (r.t ? fmt(*r.t) : "") + ',' + r.method +
         ',' + c.param_name + ',' + fmt(c.param_value) + ',' + fmt(c.chi.chi) + ',';
    if (c.has_split) s += fmt(c.chi.secular_part) + ',' + fmt(c.chi.oscillatory_part);
    else s += ',';
    s += ',' + (c.derivative ? fmt(*c.derivative) : "");
    s += ',' + (c.degeneracy ? std::to_string(*c.degeneracy) : "");
    s += ',' + (c.epsilon ? fmt(*c.epsilon) : "");
    s += '\n';
  }
  return s;
}

std::string records_json(const std::vector<Row>& rows) {
  json arr = json::array();
  auto num = [](std::optional<double> v) { return v ? json(*v) : json(nullptr); };
  for (const auto& r : rows) {
    const auto& c = r.rec;
    json o;
    o["model"] = r.model;
    o["n"] = r.n;
    o["t"] = num(r.t);
    o["method"] = r.method;
    o["param_name"] = c.param_name;
    o["param_value"] = c.param_value;
    o["chi"] = c.chi.chi;
    o["chi_secular"] = c.has_split ? json(c.chi.secular_part) : json(nullptr);
    o["chi_oscillatory"] = c.has_split ? json(c.chi.oscillatory_part) : json(nullptr);
    o["chi_derivative"] = num(c.derivative);
    o["degeneracy"] = c.degeneracy ? json(*c.degeneracy) : json(nullptr);
    o["epsilon"] = num(c.epsilon);
    arr.push_back(std::move(o));
  }
  return arr.dump(2) + '\n';
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw io_error("cannot open '" + path + "' for writing");
  f << content;
  f.flush();
  if (!f) throw io_error("failed writing '" + path + "'");
}

std::string utc_timestamp(std::chrono::system_clock::time_point tp) {
  const std::time_t tt = std::chrono::system_clock::to_time_t(tp);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

// Emits rows to --out (plus a manifest next to it) or to stdout.
void emit(const std::vector<Row>& rows, const std::string& format, const std::string& out_path,
          json manifest, std::chrono::system_clock::time_point started, std::ostream& out) {
  const std::string body = format == "json" ? records_json(rows) : csv(rows);
  if (out_path.empty()) {
    out << body;
    return;
  }
  write_file(out_path, body);
  const auto finished = std::chrono::system_clock::now();
  manifest["tool"] = "opfid";
  manifest["version"] = OPFID_VERSION;
  manifest["output"] = out_path;
  manifest["format"] = format;
  manifest["rows"] = rows.size();
  manifest["started_at"] = utc_timestamp(started);
  manifest["wall_clock_seconds"] = std::chrono::duration<double>(finished - started).count();
  write_file(out_path + ".manifest.json", manifest.dump(2) + '\n');
}

// Adds derivatives when the grid is uniform with at least three points.
std::vector<SweepRecord> with_derivative(std::vector<SweepRecord> recs) {
  if (recs.size() < 3) return recs;
  try {
    return sweep_derivative(std::move(recs));
  } catch (const validation_error&) {
    return recs;
  }
}

// ---------------------------------------------------------------------------
// Subcommand settings

struct GridFlags {
  double min = 0.0;
  double max = 1.0;
  double step = 0.01;
};

struct OutputFlags {
  std::string out;
  std::string format = "csv";
  unsigned jobs = 1;
};

struct IsingArgs {
  std::vector<int> n;
  double t = 100.0;
  GridFlags grid{0.0, 4.0, 0.005};
  std::string mode = "corrected";
  OutputFlags output;
};

struct HeisenbergArgs {
  std::vector<int> n;
  double t = 100.0;
  std::string method = "operator";
  GridFlags grid{0.0, 1.0, 0.01};
  double epsilon = 1e-3;
  std::optional<double> tol;
  double j1 = 1.0;
  OutputFlags output;
};

struct OracleArgs {
  std::string report;
  std::uint64_t seed = 20240917;
  int cases = 3;
  std::vector<int> ising_n{3, 11, 101};
  double tol = 1e-6;
  bool skip_heisenberg = false;
  bool inject_fault = false;
};

void add_output_flags(CLI::App* sub, OutputFlags& o) {
  sub->add_option("--out", o.out, "Output file (stdout when omitted)");
  sub->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub->add_option("--jobs", o.jobs, "Worker threads for the grid")
      ->check(CLI::Range(1u, 1024u))
      ->capture_default_str();
}

void add_grid_flags(CLI::App* sub, GridFlags& g, const std::string& name) {
  sub->add_option("--" + name + "-min", g.min, "Grid start")->capture_default_str();
  sub->add_option("--" + name + "-max", g.max, "Grid end (inclusive)")->capture_default_str();
  sub->add_option("--" + name + "-step", g.step, "Grid step")->capture_default_str();
}

std::vector<double> make_grid(const GridFlags& g, const std::string& name) {
  if (!std::isfinite(g.min) || !std::isfinite(g.max) || !std::isfinite(g.step)) {
    throw validation_error(name + " grid bounds must be finite");
  }
  if (!(g.step > 0.0)) throw validation_error("--" + name + "-step must be positive");
  if (g.min > g.max) throw validation_error("--" + name + "-min must not exceed --" + name + "-max");
  return uniform_grid(g.min, g.max, g.step);
}

json grid_json(const GridFlags& g) { return {{"min", g.min}, {"max", g.max}, {"step", g.step}}; }

// ---------------------------------------------------------------------------
// ising-sweep

int run_ising(const IsingArgs& a, std::ostream& out) {
  const auto started = std::chrono::system_clock::now();
  for (int n : a.n) {
    if (n < 3 || n % 2 == 0) throw validation_error("--n must be odd and at least 3");
  }
  if (!std::isfinite(a.t)) throw validation_error("--t must be finite");
  const auto grid = make_grid(a.grid, "lambda");
  const auto mode = a.mode == "paper-exact" ? ising::ZeroModeConvention::paper_exact
                                            : ising::ZeroModeConvention::corrected;
  std::vector<Row> rows;
  for (int n : a.n) {
    for (auto& r : with_derivative(ising::closed_sweep(n, grid, a.t, mode, a.output.jobs))) {
      rows.push_back({"ising", n, a.t, a.mode, std::move(r)});
    }
  }
  json manifest;
  manifest["command"] = "ising-sweep";
  manifest["config"] = {{"n", a.n},       {"t", a.t},           {"lambda", grid_json(a.grid)},
                        {"mode", a.mode}, {"jobs", a.output.jobs}};
  manifest["tolerances"] = {{"small_angle_series_below", 1e-4}};
  emit(rows, a.output.format, a.output.out, manifest, started, out);
  return kOk;
}

// ---------------------------------------------------------------------------
// heisenberg-sweep

int run_heisenberg(const HeisenbergArgs& a, std::ostream& out) {
  const auto started = std::chrono::system_clock::now();
  for (int n : a.n) {
    if (n < 4) throw validation_error("--n must be at least 4");
    if (n > default_site_cap()) {
      throw resource_error("--n " + std::to_string(n) + " exceeds the site cap of " +
                           std::to_string(default_site_cap()) + " (set OPFID_MAX_SITES)");
    }
  }
  if (!std::isfinite(a.t)) throw validation_error("--t must be finite");
  if (a.method == "mixed" && !(a.epsilon > 0.0)) throw validation_error("--epsilon must be positive");
  if (a.tol && !(*a.tol >= 0.0)) throw validation_error("--tol must be non-negative");
  const auto grid = make_grid(a.grid, "j2");

  std::vector<Row> rows;
  for (int n : a.n) {
    std::vector<SweepRecord> recs;
    std::optional<double> t;
    if (a.method == "mixed") {
      MixedSweepOptions o;
      o.epsilon = a.epsilon;
      o.tolerance = a.tol;
      o.j1 = a.j1;
      o.jobs = a.output.jobs;
      recs = mixed_sweep(n, grid, o);
    } else {
      SweepOptions o;
      o.jobs = a.output.jobs;
      recs = chi_f_sweep({ModelKind::heisenberg, n, a.j1}, grid, a.t, o);
      t = a.t;
    }
    for (auto& r : with_derivative(std::move(recs))) {
      rows.push_back({"heisenberg", n, t, a.method, std::move(r)});
    }
  }
  json manifest;
  manifest["command"] = "heisenberg-sweep";
  json cfg = {{"n", a.n},   {"method", a.method}, {"j2", grid_json(a.grid)},
              {"j1", a.j1}, {"jobs", a.output.jobs}, {"max_sites", default_site_cap()}};
  if (a.method == "mixed") {
    cfg["epsilon"] = a.epsilon;
    cfg["tol"] = a.tol ? json(*a.tol) : json("1e-9 x spectral range");
  } else {
    cfg["t"] = a.t;
  }
  manifest["config"] = cfg;
  manifest["tolerances"] = {{"secular_threshold", kDefaultSecularThreshold},
                            {"degeneracy_relative", 1e-9}};
  emit(rows, a.output.format, a.output.out, manifest, started, out);
  return kOk;
}

// ---------------------------------------------------------------------------
// oracle-check

struct Check {
  std::string name;
  int cases = 0;
  double max_abs = 0.0;
  double max_rel = 0.0;
  double tol = 0.0;
  bool relative = true;
  json worst;

  void add(double value, double reference, json where) {
    ++cases;
    const double abs_dev = std::abs(value - reference);
    const double rel_dev = abs_dev / std::max(std::abs(reference), 1e-300);
    const double key = relative ? rel_dev : abs_dev;
    if (cases == 1 || key > (relative ? max_rel : max_abs)) {
      where["value"] = value;
      where["reference"] = reference;
      worst = std::move(where);
    }
    max_abs = std::max(max_abs, abs_dev);
    max_rel = std::max(max_rel, rel_dev);
  }
  bool pass() const { return (relative ? max_rel : max_abs) < tol; }
  json to_json() const {
    return {{"name", name},       {"cases", cases},
            {"max_abs_deviation", max_abs}, {"max_rel_deviation", max_rel},
            {"criterion", relative ? "relative" : "absolute"},
            {"tolerance", tol},   {"pass", pass()}, {"worst_case", worst}};
  }
};

int run_oracle(const OracleArgs& a, std::ostream& out) {
  const auto started = std::chrono::system_clock::now();
  if (a.cases < 1) throw validation_error("--cases must be positive");
  if (!(a.tol > 0.0)) throw validation_error("--tol must be positive");
  for (int n : a.ising_n) {
    if (n < 3 || n % 2 == 0) throw validation_error("--ising-n must be odd and at least 3");
  }
  StableRng rng(a.seed);
  std::vector<Check> checks;

  // Engine vs Richardson-extrapolated operator echo on random pairs.
  {
    Check c{"engine_vs_echo", 0, 0, 0, a.tol, true, {}};
    for (int d : {4, 8, 16}) {
      for (double t : {1.0, 10.0}) {
        for (int k = 0; k < a.cases; ++k) {
          const auto h0 = random_hermitian(d, rng);
          const auto v = random_hermitian(d, rng);
          const double chi = operator_fidelity_susceptibility(h0, v, t).chi;
          c.add(chi, echo::chi_by_extrapolation(h0, v, t).value, {{"d", d}, {"t", t}});
        }
      }
    }
    checks.push_back(std::move(c));
  }

  // Closed-form Ising chi vs the pseudospin echo.
  {
    Check c{"ising_closed_vs_pseudospin", 0, 0, 0, a.tol, true, {}};
    const double t = 10.0;
    for (int n : a.ising_n) {
      for (double lambda : {0.5, 1.5, 2.0, 3.0}) {
        c.add(ising::chi_f_closed(n, lambda, t).chi, ising::chi_via_extrapolation(n, lambda, t),
              {{"n", n}, {"lambda", lambda}, {"t", t}, {"mode", "corrected"}});
      }
    }
    if (a.inject_fault) {
      c.add(ising::chi_f_closed(3, 1.5, t, ising::ZeroModeConvention::paper_exact).chi,
            ising::chi_via_extrapolation(3, 1.5, t),
            {{"n", 3}, {"lambda", 1.5}, {"t", t}, {"mode", "paper-exact"},
             {"expected_offset", t * t / 8.0}});
    }
    checks.push_back(std::move(c));
  }

  // Heisenberg chain: Sz-block engine vs dense engine vs dense echo.
  if (!a.skip_heisenberg) {
    Check blocks{"heisenberg_blocks_vs_dense", 0, 0, 0, a.tol, true, {}};
    Check echo_c{"heisenberg_engine_vs_echo", 0, 0, 0, a.tol, true, {}};
    for (int n : {6, 8}) {
      const auto v = realize_dense(heisenberg_nnn_spec(n, 0.0, 1.0));
      const auto nn = realize_dense(heisenberg_nnn_spec(n, 1.0, 0.0));
      for (double j2 : {0.3, 0.5, 0.7}) {
        const double t = 10.0;
        const std::array<double, 1> grid{j2};
        const double blocked = chi_f_sweep({ModelKind::heisenberg, n, 1.0}, grid, t)[0].chi.chi;
        const auto h0 = DenseHermitian::axpy(nn, j2, v);
        const double dense = operator_fidelity_susceptibility(h0, v, t).chi;
        blocks.add(blocked, dense, {{"n", n}, {"j2", j2}, {"t", t}});
        if (n == 6) {
          echo_c.add(dense, echo::chi_by_extrapolation(h0, v, t).value,
                     {{"n", n}, {"j2", j2}, {"t", t}});
        }
      }
    }
    checks.push_back(std::move(blocks));
    checks.push_back(std::move(echo_c));
  }

  // Controlled-U: fidelity formula vs operator Schmidt spectrum.
  {
    Check c{"entangling_power_identity", 0, 0, 0, std::min(a.tol, 1e-9), false, {}};
    for (int d : {2, 4, 8, 16}) {
      for (int k = 0; k < a.cases; ++k) {
        const auto h0 = random_hermitian(d, rng);
        const auto v = random_hermitian(d, rng);
        const double eps = 0.05 + 0.5 * rng.uniform();
        const double t = 0.5 + 5.0 * rng.uniform();
        const Matrix u0 = evolve(diagonalize(h0), t);
        const Matrix u1 = evolve(diagonalize(DenseHermitian::axpy(h0, eps, v)), t);
        const auto r = entangling_power(u0, u1);
        c.add(entangling_power_from_fidelity(std::min(r.fidelity, 1.0), r.dim), r.entangling_power,
              {{"d", d}, {"epsilon", eps}, {"t", t}});
      }
    }
    checks.push_back(std::move(c));
  }

  bool ok = true;
  json report;
  report["tool"] = "opfid";
  report["version"] = OPFID_VERSION;
  report["seed"] = a.seed;
  report["cases_per_size"] = a.cases;
  report["fault_injected"] = a.inject_fault;
  report["checks"] = json::array();
  for (const auto& c : checks) {
    ok = ok && c.pass();
    report["checks"].push_back(c.to_json());
  }
  report["pass"] = ok;
  report["started_at"] = utc_timestamp(started);
  report["wall_clock_seconds"] =
      std::chrono::duration<double>(std::chrono::system_clock::now() - started).count();
  const std::string body = report.dump(2) + '\n';
  if (a.report.empty()) out << body;
  else write_file(a.report, body);
  return ok ? kOk : kToleranceBreach;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Operator fidelity susceptibility sweeps and oracle checks", "opfid");
  app.set_version_flag("--version", OPFID_VERSION);
  app.require_subcommand(1);
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.fallthrough();  // lets --config follow the subcommand name
  app.config_formatter(std::make_shared<JsonConfig>(&app));
  app.set_config("--config", "", "JSON file with flag values (keys are flag names)");

  IsingArgs ia;
  auto* ising_cmd = app.add_subcommand("ising-sweep", "Closed-form transverse Ising chi over lambda");
  ising_cmd->add_option("--n", ia.n, "Odd chain length (repeatable)")->required();
  ising_cmd->add_option("--t", ia.t, "Evolution time")->capture_default_str();
  add_grid_flags(ising_cmd, ia.grid, "lambda");
  ising_cmd->add_option("--mode", ia.mode, "Zero-mode convention")
      ->check(CLI::IsMember({"corrected", "paper-exact"}))
      ->capture_default_str();
  add_output_flags(ising_cmd, ia.output);

  HeisenbergArgs ha;
  auto* heis_cmd = app.add_subcommand("heisenberg-sweep", "J1-J2 Heisenberg chain chi over j2");
  heis_cmd->add_option("--n", ha.n, "Chain length (repeatable)")->required();
  heis_cmd->add_option("--t", ha.t, "Evolution time (operator method)")->capture_default_str();
  heis_cmd->add_option("--method", ha.method, "operator: unitary fidelity; mixed: ground mixture")
      ->check(CLI::IsMember({"operator", "mixed"}))
      ->capture_default_str();
  add_grid_flags(heis_cmd, ha.grid, "j2");
  heis_cmd->add_option("--epsilon", ha.epsilon, "Perturbation for the mixed method")
      ->capture_default_str();
  heis_cmd->add_option("--tol", ha.tol, "Absolute ground degeneracy tolerance");
  heis_cmd->add_option("--j1", ha.j1, "Nearest-neighbour coupling")->capture_default_str();
  add_output_flags(heis_cmd, ha.output);

  OracleArgs oa;
  auto* oracle_cmd = app.add_subcommand("oracle-check", "Cross-check independent chi routes");
  oracle_cmd->add_option("--report", oa.report, "Report file (stdout when omitted)");
  oracle_cmd->add_option("--seed", oa.seed, "Random seed")->capture_default_str();
  oracle_cmd->add_option("--cases", oa.cases, "Random cases per size")->capture_default_str();
  oracle_cmd->add_option("--ising-n", oa.ising_n, "Ising chain lengths")->capture_default_str();
  oracle_cmd->add_option("--tol", oa.tol, "Relative tolerance")->capture_default_str();
  oracle_cmd->add_flag("--skip-heisenberg", oa.skip_heisenberg, "Skip the Heisenberg checks");
  oracle_cmd->add_flag("--inject-fault", oa.inject_fault,
                       "Add a paper-exact zero-mode case that must breach");

  std::vector<std::string> rev(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(rev.begin(), rev.end());
  try {
    app.parse(rev);
  } catch (const CLI::FileError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (ising_cmd->parsed()) return run_ising(ia, out);
    if (heis_cmd->parsed()) return run_heisenberg(ha, out);
    return run_oracle(oa, out);
  } catch (const io_error& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const resource_error& e) {
    err << "error: " << e.what() << '\n';
    return kResource;
  } catch (const validation_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kToleranceBreach;
  }
}

}  // namespace opfid::cli
