// Batch command-line front end for the RMHD solver library.
//
//   rmhd_cli run      <config.json>   time-march one problem, write artifacts
//   rmhd_cli converge <config.json>   mesh-refinement study against the exact solution
//   rmhd_cli report   <run-dir>       summarize traces of a finished run
//
// Global overrides: --threads N, --output DIR. Verbosity comes from the
// RMHD_LOG environment variable (quiet|info|debug or 0|1|2, default info).
// Exit status is 0 on success; failures leave a diagnostics.txt in the
// output directory and return nonzero.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rmhd/rmhd.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "1.0.0";

// ----------------------------------------------------------------- logging

int log_level() {
  static int lvl = [] {
    const char* e = std::getenv("RMHD_LOG");
    if (!e) return 1;
    std::string s(e);
    if (s == "0" || s == "quiet") return 0;
    if (s == "2" || s == "debug") return 2;
    return 1;
  }();
  return lvl;
}

void info(const std::string& msg)  { if (log_level() >= 1) std::cout << msg << "\n"; }
void debug(const std::string& msg) { if (log_level() >= 2) std::cout << msg << "\n"; }

// ------------------------------------------------------------ config model

struct run_setup {
  rmhd::problem_spec  problem;
  rmhd::scheme_config scheme;
  int nx = 0, ny = 0;
  std::vector<int> resolutions;       // converge verb
  double t_final = 0;
  std::string out_dir = "out";
  long   every_steps = 0;             // 0: no intermediate snapshots
  double every_time = 0;
  bool   slices = false;
  bool   trace_entropy = true;
  bool   trace_divergence = true;
  int    max_dt_halvings = 5;
  int    variable = rmhd::VY;         // error component for converge
  json   resolved;                    // config echo with defaults filled in
};

int variable_index(const std::string& name) {
  for (int c = 0; c < rmhd::NCOMP; ++c)
    if (name == rmhd::prim_names[c]) return c;
  throw std::invalid_argument("unknown variable name: " + name +
                              " (expected one of rho,v1,v2,v3,B1,B2,B3,p)");
}

void apply_scheme_preset(const std::string& name, rmhd::scheme_config& cfg) {
  using rmhd::dissipation;
  if (name == "EC2")      { cfg.k = 1; cfg.mode = dissipation::none; }
  else if (name == "EC4") { cfg.k = 2; cfg.mode = dissipation::none; }
  else if (name == "EC6") { cfg.k = 3; cfg.mode = dissipation::none; }
  else if (name == "ES4") { cfg.k = 2; cfg.mode = dissipation::eno; }
  else if (name == "ES5") { cfg.k = 3; cfg.mode = dissipation::weno; }
  else throw std::invalid_argument("unknown scheme preset: " + name +
                                   " (expected EC2|EC4|EC6|ES4|ES5)");
}

rmhd::dissipation parse_dissipation(const std::string& s) {
  if (s == "none") return rmhd::dissipation::none;
  if (s == "first_order") return rmhd::dissipation::first_order;
  if (s == "eno") return rmhd::dissipation::eno;
  if (s == "weno") return rmhd::dissipation::weno;
  throw std::invalid_argument("unknown dissipation mode: " + s);
}

const char* dissipation_name(rmhd::dissipation m) {
  switch (m) {
    case rmhd::dissipation::none: return "none";
    case rmhd::dissipation::first_order: return "first_order";
    case rmhd::dissipation::eno: return "eno";
    default: return "weno";
  }
}

// Parse and resolve a config file; fills every default so the manifest echo
// is sufficient to re-execute the run byte-for-byte.
run_setup load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open config file: " + path);
  json j = json::parse(is);

  run_setup s;
  if (!j.contains("problem"))
    throw std::invalid_argument("config: missing required key \"problem\"");
  s.problem = rmhd::make_problem(j.at("problem").get<std::string>());

  // --- scheme ---
  json js = j.value("scheme", json::object());
  std::string preset = js.value("name", "");
  if (!preset.empty()) apply_scheme_preset(preset, s.scheme);
  if (js.contains("k")) s.scheme.k = js.at("k").get<int>();
  if (js.contains("dissipation"))
    s.scheme.mode = parse_dissipation(js.at("dissipation").get<std::string>());
  std::string ws = js.value("wave_speed", "unit");
  if (ws != "unit" && ws != "estimate")
    throw std::invalid_argument("scheme.wave_speed must be unit|estimate");
  s.scheme.wave_speed = ws == "unit" ? rmhd::signal_mode::unit
                                     : rmhd::signal_mode::estimate;
  s.scheme.cfl = js.value("cfl", 0.4);
  s.scheme.experimental_k4 = js.value("experimental_k4", false);
  if (js.contains("dt_law")) {
    s.scheme.dt_coeff = js.at("dt_law").at("coeff").get<double>();
    s.scheme.dt_power = js.at("dt_law").at("power").get<double>();
  }

  // --- equation of state: problems carry their canonical gamma ---
  s.scheme.eos = s.problem.eos;
  if (j.contains("gamma")) {
    s.scheme.eos = rmhd::gas{j.at("gamma").get<double>()};
    s.problem.eos = s.scheme.eos;
  }

  s.scheme.threads = j.value("threads", 1);

  // --- resolution(s) ---
  if (j.contains("resolution")) {
    const json& r = j.at("resolution");
    if (r.is_array()) {
      if (r.size() != 2) throw std::invalid_argument("resolution array must be [nx, ny]");
      s.nx = r[0].get<int>(); s.ny = r[1].get<int>();
    } else {
      s.nx = r.get<int>(); s.ny = s.problem.dim == 2 ? s.nx : 0;
    }
    if (s.nx <= 0 || (s.problem.dim == 2 && s.ny <= 0))
      throw std::invalid_argument("resolution must be positive");
  }
  if (j.contains("resolutions")) {
    for (const auto& r : j.at("resolutions")) {
      int n = r.get<int>();
      if (n <= 0) throw std::invalid_argument("resolutions must be positive");
      s.resolutions.push_back(n);
    }
  }

  s.t_final = j.value("t_final", s.problem.t_final);
  s.max_dt_halvings = j.value("max_dt_halvings", 5);
  if (s.max_dt_halvings < 0 || s.max_dt_halvings > 5)
    throw std::invalid_argument("max_dt_halvings must be in 0..5");

  json jo = j.value("output", json::object());
  s.out_dir = jo.value("directory", std::string("out"));
  s.every_steps = jo.value("every_steps", 0L);
  s.every_time = jo.value("every_time", 0.0);
  if (s.every_steps < 0 || s.every_time < 0)
    throw std::invalid_argument("output cadence must be positive");
  s.slices = jo.value("slices", false);

  json jd = j.value("diagnostics", json::object());
  s.trace_entropy = jd.value("entropy", true);
  s.trace_divergence = jd.value("divergence", true);

  s.variable = variable_index(j.value("variable", std::string("v2")));

  // --- fully-resolved echo ---
  s.resolved = {
      {"problem", s.problem.name},
      {"t_final", s.t_final},
      {"gamma", s.scheme.eos.gamma},
      {"threads", s.scheme.threads},
      {"max_dt_halvings", s.max_dt_halvings},
      {"variable", rmhd::prim_names[s.variable]},
      {"scheme",
       {{"k", s.scheme.k},
        {"dissipation", dissipation_name(s.scheme.mode)},
        {"wave_speed", ws},
        {"cfl", s.scheme.cfl},
        {"experimental_k4", s.scheme.experimental_k4}}},
      {"output",
       {{"directory", s.out_dir},
        {"every_steps", s.every_steps},
        {"every_time", s.every_time},
        {"slices", s.slices}}},
      {"diagnostics",
       {{"entropy", s.trace_entropy}, {"divergence", s.trace_divergence}}},
  };
  if (s.scheme.dt_coeff > 0)
    s.resolved["scheme"]["dt_law"] = {{"coeff", s.scheme.dt_coeff},
                                      {"power", s.scheme.dt_power}};
  if (s.nx > 0)
    s.resolved["resolution"] =
        s.problem.dim == 2 ? json::array({s.nx, s.ny}) : json(s.nx);
  if (!s.resolutions.empty()) s.resolved["resolutions"] = s.resolutions;
  return s;
}

void write_manifest(const run_setup& s, const std::string& command,
                    double wall_seconds, const rmhd::run_trace& trace,
                    double final_time, const std::vector<std::string>& files) {
  json m = {
      {"tool", "rmhd_cli"},
      {"version", kVersion},
      {"compiler", __VERSION__},
      {"command", command},
      {"status", "completed"},
      {"wall_seconds", wall_seconds},
      {"steps", trace.steps},
      {"dt_halvings", trace.dt_halvings},
      {"final_time", final_time},
      {"artifacts", files},
      {"config", s.resolved},
  };
  std::ofstream os(fs::path(s.out_dir) / "manifest.json");
  os << m.dump(2) << "\n";
}

void write_failure(const std::string& out_dir, const std::string& what) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  std::ofstream os(fs::path(out_dir) / "diagnostics.txt");
  if (os) os << what << "\n";
  std::cerr << "error: " << what << "\n";
}

// ----------------------------------------------------------------- verbs

int do_run(run_setup& s) {
  if (s.nx <= 0)
    throw std::invalid_argument("run: config needs a \"resolution\"");
  fs::create_directories(s.out_dir);
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::string> files;

  rmhd::run_trace trace;
  rmhd::advance_options opt;
  opt.trace_entropy = s.trace_entropy;
  opt.trace_divergence = s.trace_divergence && s.problem.dim == 2;
  opt.max_dt_halvings = s.max_dt_halvings;

  long halvings_seen = 0;
  int snap = 0;
  double next_snap_t = s.every_time > 0 ? s.every_time : 0;
  long steps = 0;

  auto snap_name = [&](int i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "snap_%04d", i);
    return std::string(buf);
  };

  info("run: " + s.problem.name + " " +
       (s.problem.dim == 2 ? std::to_string(s.nx) + "x" + std::to_string(s.ny)
                           : "N=" + std::to_string(s.nx)) +
       " scheme k=" + std::to_string(s.scheme.k) + " " +
       dissipation_name(s.scheme.mode) + " -> " + s.out_dir);

  if (s.problem.dim == 1) {
    auto f = rmhd::init_problem_1d(s.problem, s.nx, s.scheme.ghost_width());
    opt.on_step = [&](rmhd::real t) {
      ++steps;
      if (trace.dt_halvings > halvings_seen) {
        info("  dt halved (recovery retry), total halvings " +
             std::to_string(trace.dt_halvings));
        halvings_seen = trace.dt_halvings;
      }
      bool want = (s.every_steps > 0 && steps % s.every_steps == 0) ||
                  (s.every_time > 0 && t >= next_snap_t - 1e-12);
      if (want && t < s.t_final - 1e-12) {
        const std::string name = snap_name(snap++) + ".csv";
        rmhd::write_csv_1d((fs::path(s.out_dir) / name).string(), f, s.scheme.eos);
        files.push_back(name);
        info("  snapshot " + name + " at t=" + std::to_string(t));
        if (s.every_time > 0) next_snap_t += s.every_time;
      }
      if (log_level() >= 2 && steps % 100 == 0)
        debug("  step " + std::to_string(steps) + " t=" + std::to_string(t));
    };
    rmhd::advance_to(f, s.problem.bcs1, s.scheme, s.t_final, &trace, opt);
    rmhd::write_csv_1d((fs::path(s.out_dir) / "final.csv").string(), f,
                       s.scheme.eos);
    files.push_back("final.csv");
  } else {
    auto f = rmhd::init_problem_2d(s.problem, s.nx, s.ny, s.scheme.ghost_width());
    opt.on_step = [&](rmhd::real t) {
      ++steps;
      if (trace.dt_halvings > halvings_seen) {
        info("  dt halved (recovery retry), total halvings " +
             std::to_string(trace.dt_halvings));
        halvings_seen = trace.dt_halvings;
      }
      bool want = (s.every_steps > 0 && steps % s.every_steps == 0) ||
                  (s.every_time > 0 && t >= next_snap_t - 1e-12);
      if (want && t < s.t_final - 1e-12) {
        const std::string stem = snap_name(snap++);
        rmhd::write_binary_2d((fs::path(s.out_dir) / stem).string(), f,
                              s.scheme.eos);
        files.push_back(stem + ".bin");
        files.push_back(stem + ".json");
        if (s.slices) {
          rmhd::write_csv_slice(
              (fs::path(s.out_dir) / (stem + "_slice.csv")).string(), f,
              s.scheme.eos);
          files.push_back(stem + "_slice.csv");
        }
        info("  snapshot " + stem + " at t=" + std::to_string(t));
        if (s.every_time > 0) next_snap_t += s.every_time;
      }
      if (log_level() >= 2 && steps % 20 == 0)
        debug("  step " + std::to_string(steps) + " t=" + std::to_string(t));
    };
    rmhd::advance_to(f, s.problem.bcs2, s.scheme, s.t_final, &trace, opt);
    rmhd::write_binary_2d((fs::path(s.out_dir) / "final").string(), f,
                          s.scheme.eos);
    files.push_back("final.bin");
    files.push_back("final.json");
    if (s.slices) {
      rmhd::write_csv_slice((fs::path(s.out_dir) / "final_slice.csv").string(),
                            f, s.scheme.eos);
      files.push_back("final_slice.csv");
    }
  }

  if (s.trace_entropy) {
    rmhd::write_trace((fs::path(s.out_dir) / "entropy_trace.txt").string(),
                      trace.time, trace.entropy);
    files.push_back("entropy_trace.txt");
  }
  if (opt.trace_divergence) {
    rmhd::write_trace((fs::path(s.out_dir) / "divergence_trace.txt").string(),
                      trace.time, trace.div_max);
    files.push_back("divergence_trace.txt");
  }

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_manifest(s, "run", wall, trace, s.t_final, files);
  info("run: completed, " + std::to_string(trace.steps) + " steps in " +
       std::to_string(wall) + " s");
  return 0;
}

int do_converge(run_setup& s) {
  if (s.resolutions.empty())
    throw std::invalid_argument("converge: config needs a \"resolutions\" array");
  if (!s.problem.exact)
    throw std::invalid_argument("converge: problem \"" + s.problem.name +
                                "\" has no exact solution");
  fs::create_directories(s.out_dir);
  const auto t0 = std::chrono::steady_clock::now();

  info("converge: " + s.problem.name + " on N in " +
       [&] { std::string t; for (int n : s.resolutions) t += std::to_string(n) + " "; return t; }());

  auto rep = rmhd::convergence_study(s.problem, s.scheme, s.resolutions,
                                     s.variable, s.t_final);

  std::ostringstream table;
  table << "    N           l1   order           l2   order\n";
  char line[128];
  for (const auto& r : rep.rows) {
    std::snprintf(line, sizeof line, "%5d %12.4e %7.2f %12.4e %7.2f\n", r.n,
                  r.l1, r.order_l1, r.l2, r.order_l2);
    table << line;
  }
  std::cout << table.str();

  std::ofstream csv(fs::path(s.out_dir) / "convergence.csv");
  csv << "N,l1,order_l1,l2,order_l2\n" << std::setprecision(17);
  json rows = json::array();
  for (const auto& r : rep.rows) {
    csv << r.n << "," << r.l1 << "," << r.order_l1 << "," << r.l2 << ","
        << r.order_l2 << "\n";
    rows.push_back({{"N", r.n}, {"l1", r.l1}, {"order_l1", r.order_l1},
                    {"l2", r.l2}, {"order_l2", r.order_l2}});
  }
  csv.close();
  json out = {{"problem", s.problem.name},
              {"variable", rmhd::prim_names[s.variable]},
              {"t", rep.t},
              {"rows", rows}};
  std::ofstream js(fs::path(s.out_dir) / "convergence.json");
  js << out.dump(2) << "\n";
  js.close();

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  rmhd::run_trace none;
  write_manifest(s, "converge", wall, none, rep.t,
                 {"convergence.csv", "convergence.json"});
  info("converge: completed in " + std::to_string(wall) + " s");
  return 0;
}

int do_report(const std::string& run_dir) {
  const fs::path dir(run_dir);
  const fs::path tracefile = dir / "entropy_trace.txt";
  std::ifstream is(tracefile);
  if (!is) throw std::runtime_error("no entropy_trace.txt in " + run_dir);
  std::vector<double> t, ent;
  double a, b;
  while (is >> a >> b) { t.push_back(a); ent.push_back(b); }
  if (ent.size() < 2)
    throw std::runtime_error("entropy trace in " + run_dir +
                             " has fewer than two samples");

  double max_inc = 0, max_inc_t = t.front(), scale = 0;
  for (std::size_t i = 1; i < ent.size(); ++i) {
    const double inc = ent[i] - ent[i - 1];
    if (inc > max_inc) { max_inc = inc; max_inc_t = t[i]; }
    scale = std::max(scale, std::abs(ent[i]));
  }
  const double total_drift = ent.back() - ent.front();

  std::cout << "entropy trace: " << ent.size() << " samples over t=["
            << t.front() << ", " << t.back() << "]\n";
  std::cout << "  initial total entropy: " << std::setprecision(17) << ent.front() << "\n";
  std::cout << "  final   total entropy: " << ent.back() << "\n";
  std::cout << "  net drift: " << total_drift << " (relative "
            << (scale > 0 ? total_drift / scale : 0.0) << ")\n";
  std::cout << "  max single-step increase: " << max_inc << " at t=" << max_inc_t
            << " (relative " << (scale > 0 ? max_inc / scale : 0.0) << ")\n";
  std::cout << "  verdict: "
            << (scale > 0 && max_inc <= 1e-10 * scale
                    ? "nonincreasing (within 1e-10 relative tolerance)"
                    : "NOT monotone within 1e-10 relative tolerance")
            << "\n";

  std::ifstream dv(dir / "divergence_trace.txt");
  if (dv) {
    double mx = 0;
    while (dv >> a >> b) mx = std::max(mx, b);
    std::cout << "  max |div B| over run: " << mx << "\n";
  }
  std::ifstream mf(dir / "manifest.json");
  if (mf) {
    json m = json::parse(mf, nullptr, false);
    if (!m.is_discarded() && m.contains("config"))
      std::cout << "  run: problem=" << m["config"].value("problem", std::string("?"))
                << " steps=" << m.value("steps", 0L)
                << " wall=" << m.value("wall_seconds", 0.0) << " s\n";
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"entropy-conservative / entropy-stable RMHD solver"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string config_path, run_dir, out_override;
  int threads_override = 0;

  auto* run = app.add_subcommand("run", "time-march one problem from a JSON config");
  run->add_option("config", config_path, "JSON config file")->required();
  run->add_option("--threads", threads_override, "override worker thread count");
  run->add_option("--output", out_override, "override output directory");

  auto* conv = app.add_subcommand("converge", "mesh-refinement study from a JSON config");
  conv->add_option("config", config_path, "JSON config file")->required();
  conv->add_option("--threads", threads_override, "override worker thread count");
  conv->add_option("--output", out_override, "override output directory");

  auto* rep = app.add_subcommand("report", "summarize traces of a finished run");
  rep->add_option("run-dir", run_dir, "directory written by `run`")->required();

  CLI11_PARSE(app, argc, argv);

  std::string out_dir_for_diag = out_override.empty() ? "out" : out_override;
  try {
    if (rep->parsed()) return do_report(run_dir);

    run_setup s = load_config(config_path);
    if (threads_override > 0) {
      s.scheme.threads = threads_override;
      s.resolved["threads"] = threads_override;
    }
    if (!out_override.empty()) {
      s.out_dir = out_override;
      s.resolved["output"]["directory"] = out_override;
    }
    out_dir_for_diag = s.out_dir;
    s.scheme.validate();
    return run->parsed() ? do_run(s) : do_converge(s);
  } catch (const std::exception& e) {
    write_failure(out_dir_for_diag, e.what());
    return 1;
  }
}
