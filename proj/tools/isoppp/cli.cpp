#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "isoppp/applications.hpp"
#include "isoppp/bounds.hpp"
#include "isoppp/mcsim.hpp"
#include "isoppp/outage.hpp"
#include "shape_config.hpp"
#include "table.hpp"

namespace isoppp::cli {

namespace {

using nlohmann::json;

struct Sweep {
  std::string axis;
  double lo = 0.0;
  double hi = 0.0;
  double step = 1.0;
  std::string text;

  std::vector<double> grid() const {
    std::vector<double> out;
    if (hi < lo) return out;
    const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step * (1.0 + 1e-12) + 1e-9)) + 1;
    for (std::size_t i = 0; i < n; ++i) out.push_back(lo + static_cast<double>(i) * step);
    return out;
  }
};

// Fully resolved run configuration; echoed into every output.
struct Settings {
  std::string command;
  json shape = "C";
  double alpha = 4.0;
  double c = 1.0;
  double lambda = 1e-3;
  double y0 = 0.0;
  double d = 10.0;
  double beta = 1.0;
  std::optional<double> eta_db;
  double tol = 1e-10;
  double s = 1.0;
  double z = 0.1;
  double epsilon = 0.1;
  double M = 4.0;
  double delta = 1e-5;
  std::string fading = "rayleigh";
  std::uint64_t seed = 1;
  std::size_t trials = 100'000;
  std::optional<double> max_radius;
  bool approx = false;
  bool sim_outage = false;
  bool sim_tail = false;
  bool sim_laplace = false;
  std::optional<Sweep> sweep;
  unsigned workers = 0;
  std::string format = "csv";
  std::string out_path;

  json to_json() const {
    return json{{"command", command},
                {"shape", shape},
                {"alpha", alpha},
                {"c", c},
                {"lambda", lambda},
                {"y0", y0},
                {"d", d},
                {"beta", beta},
                {"eta_db", eta_db ? json(*eta_db) : json(nullptr)},
                {"tol", tol},
                {"s", s},
                {"z", z},
                {"epsilon", epsilon},
                {"M", M},
                {"delta", delta},
                {"fading", fading},
                {"seed", seed},
                {"trials", trials},
                {"max_radius", max_radius ? json(*max_radius) : json(nullptr)},
                {"approx", approx},
                {"simulate_outage", sim_outage},
                {"simulate_tail", sim_tail},
                {"simulate_laplace", sim_laplace},
                {"sweep", sweep ? json(sweep->text) : json(nullptr)}};
  }
};

const std::vector<std::string> kCommands = {"mean",     "laplace", "outage", "divergence",
                                            "relerror", "capacity", "fhds",  "csma",
                                            "bounds",   "simulate"};
const std::vector<std::string> kAxes = {"y0", "d", "z", "s", "M", "beta", "lambda", "delta"};

[[noreturn]] void config_error(const std::string& what) { fail(ErrorKind::InvalidArgument, what); }

Sweep parse_sweep(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) config_error("--sweep expects axis=lo:hi:step, got '" + text + "'");
  Sweep sw;
  sw.text = text;
  sw.axis = text.substr(0, eq);
  if (std::find(kAxes.begin(), kAxes.end(), sw.axis) == kAxes.end())
    config_error("unknown sweep axis '" + sw.axis + "'");
  std::vector<double> parts;
  std::stringstream ss(text.substr(eq + 1));
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      config_error("bad number '" + item + "' in --sweep");
    }
  }
  if (parts.size() != 3) config_error("--sweep expects axis=lo:hi:step, got '" + text + "'");
  sw.lo = parts[0];
  sw.hi = parts[1];
  sw.step = parts[2];
  if (!std::isfinite(sw.lo) || !std::isfinite(sw.hi) || !(sw.step > 0.0))
    config_error("--sweep bounds must be finite with a positive step");
  return sw;
}

void set_axis(Settings& s, const std::string& axis, double v) {
  if (axis == "y0") s.y0 = v;
  else if (axis == "d") s.d = v;
  else if (axis == "z") s.z = v;
  else if (axis == "s") s.s = v;
  else if (axis == "M") s.M = v;
  else if (axis == "beta") s.beta = v;
  else if (axis == "lambda") s.lambda = v;
  else if (axis == "delta") s.delta = v;
}

ChannelModel channel_of(const Settings& s) {
  ChannelModel ch;
  ch.alpha = s.alpha;
  ch.c = s.c;
  if (s.fading == "rayleigh") ch.fading = FadingLaw::rayleigh();
  else if (s.fading == "unit") ch.fading = FadingLaw::unit();
  else config_error("fading must be 'rayleigh' or 'unit', got '" + s.fading + "'");
  return ch;
}

LinkConfig link_of(const Settings& s) {
  LinkConfig link;
  link.lambda_scale = s.lambda;
  link.y0_norm = s.y0;
  link.distance = s.d;
  link.beta = s.beta;
  link.eta_db = s.eta_db;
  return link;
}

std::vector<std::string> columns_for(const Settings& s) {
  const std::string& cmd = s.command;
  if (cmd == "mean") return {"mean", "abs_error"};
  if (cmd == "laplace") return {"laplace"};
  if (cmd == "outage") return s.approx ? std::vector<std::string>{"outage", "approx"}
                                        : std::vector<std::string>{"outage"};
  if (cmd == "divergence") return {"gamma", "gamma_from_outages"};
  if (cmd == "relerror") return {"exact", "approx", "relative_error"};
  if (cmd == "capacity") return {"capacity", "intensity"};
  if (cmd == "fhds") return {"ratio", "asymptote"};
  if (cmd == "csma") return {"accuracy_loss", "large_scale_density"};
  if (cmd == "bounds") return {"lower", "markov"};
  std::vector<std::string> cols{"mean", "mean_se"};
  if (s.sim_tail) cols.insert(cols.end(), {"tail", "tail_se"});
  if (s.sim_outage) cols.insert(cols.end(), {"outage", "outage_se"});
  if (s.sim_laplace) cols.insert(cols.end(), {"laplace", "laplace_se"});
  cols.insert(cols.end(), {"truncation_radius", "truncation_bias", "mean_points"});
  return cols;
}

std::vector<double> evaluate(const Settings& s, const ShapeFunction& shape, unsigned sim_workers) {
  const std::string& cmd = s.command;
  const ChannelModel ch = channel_of(s);
  const LinkConfig link = link_of(s);
  if (cmd == "mean") {
    const IntegralResult r = mean_interference(shape, ch, s.lambda, s.y0, s.tol);
    if (!r.converged) fail(ErrorKind::NonConvergence, "mean interference did not converge");
    return {r.value, r.abs_error};
  }
  if (cmd == "laplace") return {laplace_transform(shape, ch, s.lambda, s.y0, s.s, s.tol)};
  if (cmd == "outage") {
    std::vector<double> v{outage_exact(shape, ch, link, s.tol)};
    if (s.approx) v.push_back(outage_approx(shape, ch, link));
    return v;
  }
  if (cmd == "divergence")
    return {log_divergence(shape, ch, link, s.tol), log_divergence_from_outages(shape, ch, link, s.tol)};
  if (cmd == "relerror")
    return {outage_exact(shape, ch, link, s.tol), outage_approx(shape, ch, link),
            relative_error(shape, ch, link, s.tol)};
  if (cmd == "capacity")
    return {local_transmission_capacity(shape, ch, link, s.epsilon, s.tol),
            capacity_intensity(shape, ch, link, s.epsilon, s.tol)};
  if (cmd == "fhds") {
    const FhDsGain g = fh_ds_gain(shape, s.d, s.beta, s.M, s.tol);
    return {g.ratio, g.asymptote};
  }
  if (cmd == "csma")
    return {csma_accuracy_loss(s.lambda, s.alpha, s.delta, s.d, s.beta, s.tol),
            csma_large_scale_density(s.lambda, s.alpha, s.delta)};
  if (cmd == "bounds")
    return {lower_tail_bound(shape, ch, s.lambda, s.y0, s.z, s.tol),
            markov_upper_tail(shape, ch, s.lambda, s.y0, s.z, s.tol)};

  SimConfig cfg;
  cfg.trials = s.trials;
  cfg.seed = s.seed;
  cfg.max_radius_override = s.max_radius;
  cfg.workers = sim_workers;
  SimRequest req;
  if (s.sim_tail) req.tail_levels = {s.z};
  req.outage = s.sim_outage;
  if (s.sim_laplace) req.laplace_points = {s.s};
  const SimOutcome o = simulate(shape, ch, link, req, cfg);
  std::vector<double> v{o.mean.value, o.mean.std_error};
  if (s.sim_tail) v.insert(v.end(), {o.tail[0].second.value, o.tail[0].second.std_error});
  if (s.sim_outage) v.insert(v.end(), {o.outage->value, o.outage->std_error});
  if (s.sim_laplace) v.insert(v.end(), {o.laplace[0].second.value, o.laplace[0].second.std_error});
  v.insert(v.end(), {o.truncation_radius, o.truncation_bias_bound, o.mean_point_count});
  return v;
}

std::string describe_error(const std::exception& e) { return e.what(); }

Row evaluate_row(const Settings& s, const ShapeFunction& shape, unsigned sim_workers,
                 std::optional<double> axis_value) {
  Row row;
  if (axis_value) row.values.push_back(*axis_value);
  try {
    for (double v : evaluate(s, shape, sim_workers)) row.values.push_back(v);
  } catch (const std::exception& e) {
    row.values.resize(axis_value ? 1 : 0);
    row.error = describe_error(e);
  }
  return row;
}

// Command-line values; presence decides whether they override the file.
struct Flags {
  std::string shape, scenario_file, sweep, task, fading, out, format;
  double alpha = 0, c = 0, lambda = 0, y0 = 0, d = 0, beta = 0, eta_db = 0, tol = 0, s = 0, z = 0,
         epsilon = 0, M = 0, delta = 0, delta_db = 0, max_radius = 0;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  unsigned workers = 0;
  bool approx = false, sim_outage = false, sim_tail = false, sim_laplace = false;
  std::map<std::string, CLI::Option*> opts;

  bool given(const std::string& name) const {
    auto it = opts.find(name);
    return it != opts.end() && it->second->count() > 0;
  }
};

void add_common(CLI::App* app, Flags& f) {
  auto& o = f.opts;
  o["shape"] = app->add_option("--shape", f.shape, "Shape descriptor: JSON or a bare name");
  o["scenario-file"] = app->add_option("--scenario-file", f.scenario_file, "JSON config file")
                           ->check(CLI::ExistingFile);
  o["alpha"] = app->add_option("--alpha", f.alpha, "Path-loss exponent");
  o["c"] = app->add_option("--c", f.c, "Path-loss constant");
  o["lambda"] = app->add_option("--lambda", f.lambda, "Intensity scale");
  o["y0"] = app->add_option("--y0", f.y0, "Receiver distance from the origin");
  o["d"] = app->add_option("--d", f.d, "Link distance");
  o["beta"] = app->add_option("--beta", f.beta, "SINR threshold");
  o["eta-db"] = app->add_option("--eta-db", f.eta_db, "Mean SNR in dB (default: no noise)");
  o["tol"] = app->add_option("--tol", f.tol, "Quadrature tolerance");
  o["s"] = app->add_option("--s", f.s, "Laplace variable");
  o["z"] = app->add_option("--z", f.z, "Interference level for tail bounds");
  o["epsilon"] = app->add_option("--epsilon", f.epsilon, "Outage constraint");
  o["M"] = app->add_option("--M", f.M, "Processing gain");
  o["delta"] = app->add_option("--delta", f.delta, "Sensing threshold (linear)");
  o["delta-db"] = app->add_option("--delta-db", f.delta_db, "Sensing threshold in dB");
  o["fading"] = app->add_option("--fading", f.fading, "rayleigh | unit");
  o["seed"] = app->add_option("--seed", f.seed, "Monte-Carlo seed");
  o["trials"] = app->add_option("--trials", f.trials, "Monte-Carlo trials");
  o["max-radius"] = app->add_option("--max-radius", f.max_radius, "Simulation truncation radius");
  o["approx"] = app->add_flag("--approx", f.approx, "Also report the locally stationary approximation");
  o["outage"] = app->add_flag("--outage", f.sim_outage, "simulate: estimate the outage probability");
  o["tail"] = app->add_flag("--tail", f.sim_tail, "simulate: estimate P(I >= z)");
  o["laplace"] = app->add_flag("--laplace", f.sim_laplace, "simulate: estimate E[exp(-s I)]");
  auto* sweep = app->add_option("--sweep", f.sweep, "axis=lo:hi:step over " +
                                                        std::string("y0|d|z|s|M|beta|lambda|delta"));
  o["sweep"] = sweep;
  o["workers"] = app->add_option("--workers", f.workers, "Worker threads (0: all cores)");
  o["out"] = app->add_option("--out", f.out, "Output file (default: stdout)");
  o["format"] = app->add_option("--format", f.format, "csv | json")
                    ->check(CLI::IsMember({"csv", "json"}));
}

template <class T>
void read_key(const json& file, const char* key, T& target) {
  if (!file.contains(key) || file[key].is_null()) return;
  try {
    target = file[key].get<T>();
  } catch (const json::exception&) {
    config_error(std::string("config key '") + key + "' has the wrong type");
  }
}

void apply_file(Settings& s, const std::string& path) {
  std::ifstream in(path);
  if (!in) config_error("cannot open scenario file '" + path + "'");
  const json file = json::parse(in, nullptr, false);
  if (file.is_discarded() || !file.is_object())
    config_error("scenario file '" + path + "' is not a JSON object");
  static const std::vector<std::string> known = {
      "command", "task", "shape", "alpha", "c", "lambda", "y0", "d", "beta", "eta_db", "tol",
      "s", "z", "epsilon", "M", "delta", "delta_db", "fading", "seed", "trials", "max_radius",
      "approx", "simulate_outage", "simulate_tail", "simulate_laplace", "sweep"};
  for (const auto& [key, _] : file.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      config_error("unknown key '" + key + "' in scenario file");
  if (file.contains("shape")) s.shape = file["shape"];
  read_key(file, "alpha", s.alpha);
  read_key(file, "c", s.c);
  read_key(file, "lambda", s.lambda);
  read_key(file, "y0", s.y0);
  read_key(file, "d", s.d);
  read_key(file, "beta", s.beta);
  if (file.contains("eta_db") && !file["eta_db"].is_null()) {
    double v = 0;
    read_key(file, "eta_db", v);
    s.eta_db = v;
  }
  read_key(file, "tol", s.tol);
  read_key(file, "s", s.s);
  read_key(file, "z", s.z);
  read_key(file, "epsilon", s.epsilon);
  read_key(file, "M", s.M);
  if (file.contains("delta_db") && !file["delta_db"].is_null()) {
    double db = 0;
    read_key(file, "delta_db", db);
    s.delta = std::pow(10.0, db / 10.0);
  }
  read_key(file, "delta", s.delta);
  read_key(file, "fading", s.fading);
  read_key(file, "seed", s.seed);
  read_key(file, "trials", s.trials);
  if (file.contains("max_radius") && !file["max_radius"].is_null()) {
    double v = 0;
    read_key(file, "max_radius", v);
    s.max_radius = v;
  }
  read_key(file, "approx", s.approx);
  read_key(file, "simulate_outage", s.sim_outage);
  read_key(file, "simulate_tail", s.sim_tail);
  read_key(file, "simulate_laplace", s.sim_laplace);
  if (file.contains("sweep") && file["sweep"].is_string())
    s.sweep = parse_sweep(file["sweep"].get<std::string>());
  if (s.command == "sweep") read_key(file, "task", s.command);
  if (s.command == "sweep") read_key(file, "command", s.command);
}

Settings resolve(const std::string& sub, const Flags& f) {
  Settings s;
  s.command = sub;
  if (!f.scenario_file.empty()) apply_file(s, f.scenario_file);
  if (sub == "sweep") {
    if (!f.task.empty()) s.command = f.task;
    if (s.command == "sweep") config_error("sweep needs --task or a \"task\" key");
  }
  if (std::find(kCommands.begin(), kCommands.end(), s.command) == kCommands.end())
    config_error("unknown task '" + s.command + "'");

  if (f.given("shape")) s.shape = shape_descriptor_from_text(f.shape);
  if (f.given("alpha")) s.alpha = f.alpha;
  if (f.given("c")) s.c = f.c;
  if (f.given("lambda")) s.lambda = f.lambda;
  if (f.given("y0")) s.y0 = f.y0;
  if (f.given("d")) s.d = f.d;
  if (f.given("beta")) s.beta = f.beta;
  if (f.given("eta-db")) s.eta_db = f.eta_db;
  if (f.given("tol")) s.tol = f.tol;
  if (f.given("s")) s.s = f.s;
  if (f.given("z")) s.z = f.z;
  if (f.given("epsilon")) s.epsilon = f.epsilon;
  if (f.given("M")) s.M = f.M;
  if (f.given("delta-db")) s.delta = std::pow(10.0, f.delta_db / 10.0);
  if (f.given("delta")) s.delta = f.delta;
  if (f.given("fading")) s.fading = f.fading;
  if (f.given("seed")) s.seed = f.seed;
  if (f.given("trials")) s.trials = f.trials;
  if (f.given("max-radius")) s.max_radius = f.max_radius;
  if (f.given("approx")) s.approx = true;
  if (f.given("outage")) s.sim_outage = true;
  if (f.given("tail")) s.sim_tail = true;
  if (f.given("laplace")) s.sim_laplace = true;
  if (f.given("sweep")) s.sweep = parse_sweep(f.sweep);
  if (sub == "sweep" && !s.sweep) config_error("sweep needs --sweep or a \"sweep\" key");
  if (f.given("workers")) s.workers = f.workers;
  if (f.given("out")) s.out_path = f.out;
  if (f.given("format")) s.format = f.format;
  if (!(s.tol > 0.0)) config_error("--tol must be positive");
  if (s.command == "simulate" && s.sweep) {
    if (s.sweep->axis == "z") s.sim_tail = true;
    if (s.sweep->axis == "s") s.sim_laplace = true;
  }
  // Scenario D follows the channel exponent unless told otherwise.
  if (s.command == "csma") s.shape = json{{"scenario", "D"}, {"params", {{"delta", s.delta}, {"alpha", s.alpha}}}};
  return s;
}

Table run_table(const Settings& s) {
  const ResolvedShape rs = resolve_shape(s.shape);
  Settings echo = s;
  echo.shape = rs.descriptor;

  Table table;
  table.config = echo.to_json();
  const auto cols = columns_for(s);
  if (s.sweep) table.columns.push_back(s.sweep->axis);
  table.columns.insert(table.columns.end(), cols.begin(), cols.end());

  if (!s.sweep) {
    table.rows.push_back(Row{});
    for (double v : evaluate(s, rs.shape, s.workers)) table.rows.back().values.push_back(v);
    return table;
  }

  const std::vector<double> grid = s.sweep->grid();
  table.rows.resize(grid.size());
  unsigned workers = s.workers ? s.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(grid.size(), 1)));
  const unsigned sim_workers = workers > 1 ? 1 : s.workers;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      Settings point = s;
      set_axis(point, s.sweep->axis, grid[i]);
      table.rows[i] = evaluate_row(point, rs.shape, sim_workers, grid[i]);
    }
  };
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  return table;
}

int replot(const std::string& path, std::ostream& out, std::ostream& err) {
  std::ifstream in(path);
  if (!in) {
    err << "error: cannot open '" << path << "'\n";
    return kExitConfig;
  }
  try {
    const ParsedCsv csv = read_csv(in);
    const std::string problem = replot_check(csv);
    if (!problem.empty()) {
      err << "error: " << problem << '\n';
      return kExitConfig;
    }
    out << "ok: " << csv.fields.size() << " rows, " << csv.header.size() << " columns\n";
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::DivergentIntegral:
    case ErrorKind::NoFiniteTruncation: return kExitDivergent;
    case ErrorKind::NonConvergence: return kExitNonConvergence;
    default: return kExitConfig;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Interference statistics for isotropic Poisson networks", "isoppp"};
  std::string replot_path;
  app.add_option("--replot-check", replot_path, "Re-read a CSV written by this tool and verify it");

  Flags flags;
  std::map<std::string, CLI::App*> subs;
  std::vector<std::unique_ptr<Flags>> sub_flags;
  for (const std::string& name : kCommands) {
    auto* sub = app.add_subcommand(name, "Compute " + name);
    sub_flags.push_back(std::make_unique<Flags>());
    add_common(sub, *sub_flags.back());
    subs[name] = sub;
  }
  auto* sweep = app.add_subcommand("sweep", "Run any task over a parameter grid");
  sub_flags.push_back(std::make_unique<Flags>());
  add_common(sweep, *sub_flags.back());
  sweep->add_option("--task", sub_flags.back()->task, "Task to sweep (or \"task\" in the scenario file)");
  subs["sweep"] = sweep;
  app.require_subcommand(0, 1);

  std::vector<const char*> argv{"isoppp"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (!replot_path.empty()) return replot(replot_path, out, err);

  std::size_t idx = 0;
  std::string chosen;
  const Flags* f = nullptr;
  for (const std::string& name : kCommands) {
    if (subs[name]->parsed()) {
      chosen = name;
      f = sub_flags[idx].get();
    }
    ++idx;
  }
  if (sweep->parsed()) {
    chosen = "sweep";
    f = sub_flags.back().get();
  }
  if (!f) {
    err << app.help();
    return kExitConfig;
  }

  try {
    const Settings s = resolve(chosen, *f);
    const Table table = run_table(s);
    std::ofstream file;
    std::ostream* sink = &out;
    if (!s.out_path.empty()) {
      file.open(s.out_path);
      if (!file) config_error("cannot write '" + s.out_path + "'");
      sink = &file;
    }
    if (s.format == "json") write_json(*sink, table);
    else write_csv(*sink, table);
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace isoppp::cli
