#include <casimir/admissibility.hpp>
#include <casimir/cli.hpp>
#include <casimir/lifshitz.hpp>
#include <casimir/modesum.hpp>

#include "config.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <thread>

namespace casimir::cli {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

struct Flags {
  std::string config_path;
  bool dump_config = false;
  std::string model, table, tail_low, tail_high, route, routes, param, output, format;
  double wp = 0, gamma = 0, gamma_residual = 0, gamma_amplitude = 0, gamma_exponent = 0;
  double sigma = 0, sigma0 = 0, sigma_gap = 0, eps_lattice = 0, rd = 0;
  double ttilde = 0, rtol = 0, delta = 0, step = 0, from = 0, to = 0, ql_from = 0, ql_to = 0, k = 0;
  double omega_ref = 0, omega_ref_ev = 0, gap_m = 0, temperature_k = 0;
  int points = 0, jobs = 0;
  bool log = false;
  std::vector<std::string> oscillators;
};

// Outcome of one computed row; `numerical` marks exit code 2.
struct Row {
  json cells;
  bool numerical_failure = false;
  std::string message;
};

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number()) return format_number(v.get<double>());
  return v.get<std::string>();
}

json number_cell(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

void write_rows(std::ostream& out, const std::vector<json>& rows, const std::string& format) {
  if (format == "json") {
    json doc = json::array();
    for (const auto& r : rows) doc.push_back(r);
    out << doc.dump(2) << "\n";
    return;
  }
  if (rows.empty()) return;
  bool first = true;
  for (const auto& [key, value] : rows.front().items()) {
    out << (first ? "" : ",") << key;
    first = false;
  }
  out << "\n";
  for (const auto& r : rows) {
    first = true;
    for (const auto& [key, value] : r.items()) {
      out << (first ? "" : ",") << csv_cell(value);
      first = false;
    }
    out << "\n";
  }
}

// Evaluates fn(i) for i < n on up to `jobs` threads; results keep index order.
std::vector<Row> parallel_rows(std::size_t n, unsigned jobs, const std::function<Row(std::size_t)>& fn) {
  std::vector<Row> rows(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) rows[i] = fn(i);
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
  if (workers == 1) {
    worker();
    return rows;
  }
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return rows;
}

struct Point {
  std::string param = "none";
  std::optional<double> value;
  json model;
  std::optional<double> ttilde;
  std::optional<double> gap;
};

std::vector<Point> points(const RunConfig& c) {
  Point base;
  base.model = c.model;
  if (c.ttilde) base.ttilde = c.ttilde;
  if (c.units) {
    base.ttilde = c.units->ttilde();
    base.gap = c.units->gap_m;
  }
  if (!c.sweep) return {base};
  std::vector<Point> out;
  for (double v : c.sweep->grid.values()) {
    Point p = base;
    p.param = c.sweep->param;
    p.value = v;
    if (p.param == "ttilde")
      p.ttilde = v;
    else if (p.param == "l")
      p.gap = v;
    else
      p.model[p.param] = v;
    out.push_back(std::move(p));
  }
  return out;
}

double require_temperature(const Point& p, Route r) {
  if (!p.ttilde) throw DomainError("route " + to_string(r) + " needs --ttilde or a units block");
  return *p.ttilde;
}

PressureResult pressure(const RunConfig& c, const Point& p, Route route) {
  const DielectricModel m = build_model(p.model);
  switch (route) {
  case Route::matsubara: {
    MatsubaraOptions o;
    o.rtol = c.rtol;
    return matsubara_pressure(m, require_temperature(p, route), o);
  }
  case Route::classical: {
    const double t = require_temperature(p, route);
    auto r = classical_limit(m, t);
    r.phi *= t;
    r.err_estimate *= t;
    return r;
  }
  case Route::zeroT: return zero_T_pressure(m, c.rtol);
  case Route::realaxis: return real_axis_pressure(m, require_temperature(p, route), c.rtol, c.delta);
  case Route::modes: return pressure_from_modes(m, std::min(c.rtol, 1e-10));
  }
  throw DomainError("unknown route");
}

void sweep_cells(json& row, const Point& p) {
  row["sweep_param"] = p.param;
  row["value"] = p.value ? json(*p.value) : json(nullptr);
}

Row pressure_row(const RunConfig& c, const Point& p) {
  Row row;
  sweep_cells(row.cells, p);
  double phi = nan, err = nan;
  bool converged = true;
  try {
    const auto r = pressure(c, p, c.route);
    phi = r.phi;
    err = r.err_estimate;
  } catch (const NonConvergenceError& e) {
    phi = e.partial_value();
    err = e.error_estimate();
    converged = false;
    row.numerical_failure = true;
    row.message = e.what();
  } catch (const NumericalError& e) {
    converged = false;
    row.numerical_failure = true;
    row.message = e.what();
  }
  row.cells["phi"] = number_cell(phi);
  row.cells["err_estimate"] = number_cell(err);
  row.cells["route"] = to_string(c.route);
  row.cells["converged"] = converged;
  if (c.units) row.cells["pressure_pa"] = number_cell(c.units->pressure_pa(phi, *p.gap));
  return row;
}

Row entropy_row(const RunConfig& c, const Point& p) {
  Row row;
  sweep_cells(row.cells, p);
  const double t = require_temperature(p, Route::matsubara);
  const double h = c.step ? *c.step : 0.25 * t;
  double s = nan, sh = nan, sh2 = nan;
  bool converged = true;
  try {
    const auto r = entropy(build_model(p.model), t, h);
    s = r.entropy;
    sh = r.stencil_h;
    sh2 = r.stencil_h2;
  } catch (const NumericalError& e) {
    converged = false;
    row.numerical_failure = true;
    row.message = e.what();
  }
  row.cells["ttilde"] = t;
  row.cells["entropy"] = number_cell(s);
  row.cells["stencil_h"] = number_cell(sh);
  row.cells["stencil_h2"] = number_cell(sh2);
  row.cells["step"] = h;
  row.cells["converged"] = converged;
  return row;
}

Row compare_row(const RunConfig& c, const Point& p) {
  Row row;
  sweep_cells(row.cells, p);
  double phi[2] = {nan, nan};
  bool converged = true;
  const Route routes[2] = {c.compare.first, c.compare.second};
  for (int i = 0; i < 2; ++i) {
    try {
      phi[i] = pressure(c, p, routes[i]).phi;
    } catch (const NonConvergenceError& e) {
      phi[i] = e.partial_value();
      converged = false;
      row.numerical_failure = true;
      row.message = e.what();
    } catch (const NumericalError& e) {
      converged = false;
      row.numerical_failure = true;
      row.message = e.what();
    }
  }
  row.cells["route_a"] = to_string(routes[0]);
  row.cells["phi_a"] = number_cell(phi[0]);
  row.cells["route_b"] = to_string(routes[1]);
  row.cells["phi_b"] = number_cell(phi[1]);
  const double scale = std::max(std::abs(phi[0]), std::abs(phi[1]));
  row.cells["rel_gap"] = number_cell(scale > 0.0 ? std::abs(phi[0] - phi[1]) / scale : 0.0);
  row.cells["converged"] = converged;
  return row;
}

int emit(const RunConfig& c, const std::string& text, std::ostream& out) {
  if (c.output == "-") {
    out << text;
    return 0;
  }
  std::ofstream f(c.output, std::ios::binary);
  if (!f) throw DomainError("cannot write '" + c.output + "'");
  f << text;
  return 0;
}

int run_rows(const RunConfig& c, const std::function<Row(const RunConfig&, const Point&)>& fn, std::ostream& out,
             std::ostream& err) {
  const auto pts = points(c);
  const auto rows = parallel_rows(pts.size(), c.jobs, [&](std::size_t i) { return fn(c, pts[i]); });
  std::vector<json> cells;
  int code = 0;
  for (const auto& r : rows) {
    cells.push_back(r.cells);
    if (r.numerical_failure) {
      err << "warning: " << r.message << "\n";
      code = 2;
    }
  }
  std::ostringstream text;
  write_rows(text, cells, c.format);
  emit(c, text.str(), out);
  return code;
}

int run_config(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.command == "pressure" || c.command == "sweep") return run_rows(c, pressure_row, out, err);
  if (c.command == "entropy") return run_rows(c, entropy_row, out, err);
  if (c.command == "compare") return run_rows(c, compare_row, out, err);
  if (c.command == "audit") {
    AuditOptions o;
    if (c.ttilde) o.temperature = *c.ttilde;
    o.wave_number = c.wave_number;
    const auto rep = audit(build_model(c.model), o);
    emit(c, to_json(rep).dump(2) + "\n", out);
    return 0;
  }
  if (c.command == "modes") {
    const auto grid = c.ql.values();
    const auto spectrum = mode_spectrum(build_model(c.model), grid);
    std::ostringstream text;
    if (c.format == "json") {
      json j;
      j["model"] = spectrum.model;
      j["omega_inf"] = spectrum.omega_inf;
      j["ql"] = spectrum.ql;
      j["omega_minus"] = spectrum.omega_minus;
      j["omega_plus"] = spectrum.omega_plus;
      text << j.dump(2) << "\n";
    } else {
      write_csv(text, spectrum);
    }
    emit(c, text.str(), out);
    return 0;
  }
  if (c.command == "ingest-check") {
    if (!c.model.contains("type") || c.model.at("type") != "table")
      throw DomainError("ingest-check needs a table model (--model table --table FILE)");
    const auto m = build_model(c.model);
    const auto& t = std::get<Tabulated>(m);
    json j;
    j["status"] = "ok";
    j["rows"] = t.samples().size();
    j["omega_min"] = t.samples().front().omega;
    j["omega_max"] = t.samples().back().omega;
    j["tail_low"] = t.low_tail().name();
    j["tail_high"] = t.high_tail().name();
    emit(c, j.dump(2) + "\n", out);
    return 0;
  }
  throw DomainError("unknown command '" + c.command + "'");
}

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open config '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw DomainError("config '" + path + "': " + e.what());
  }
}

std::vector<double> split_numbers(const std::string& s, const std::string& what) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw DomainError("invalid " + what + " '" + s + "'");
    }
  }
  return v;
}

// Command-line flags override keys of the (optional) config document.
json merge(const CLI::App& app, const Flags& f, const std::string& command) {
  json doc = f.config_path.empty() ? json::object() : load_config(f.config_path);
  if (!doc.is_object()) throw DomainError("config must be a JSON object");
  auto given = [&](const char* name) { return app.count(name) > 0; };
  doc["command"] = command;

  json& model = doc["model"];
  if (!model.is_object()) model = json::object();
  if (given("--model") && (!model.contains("type") || model["type"] != f.model)) model = json{{"type", f.model}};
  if (given("--wp")) model["wp"] = f.wp;
  if (given("--gamma")) model["gamma"] = f.gamma;
  if (given("--gamma-residual") || given("--gamma-amplitude") || given("--gamma-exponent")) {
    json g = model.contains("gamma") && model["gamma"].is_object() ? model["gamma"] : json::object();
    if (given("--gamma-residual")) g["residual"] = f.gamma_residual;
    if (given("--gamma-amplitude")) g["amplitude"] = f.gamma_amplitude;
    if (given("--gamma-exponent")) g["exponent"] = f.gamma_exponent;
    model["gamma"] = g;
  }
  if (given("--sigma")) model["sigma"] = f.sigma;
  if (given("--sigma0") || given("--sigma-gap")) {
    json s = model.contains("sigma") && model["sigma"].is_object() ? model["sigma"] : json::object();
    if (given("--sigma0")) s["sigma0"] = f.sigma0;
    if (given("--sigma-gap")) s["gap"] = f.sigma_gap;
    model["sigma"] = s;
  }
  if (given("--eps-lattice")) model["eps_lattice"] = f.eps_lattice;
  if (given("--oscillator")) {
    json list = json::array();
    for (const auto& o : f.oscillators) {
      const auto v = split_numbers(o, "oscillator");
      if (v.size() != 3) throw DomainError("--oscillator takes f,w,g");
      list.push_back(v);
    }
    model["oscillators"] = list;
  }
  if (given("--rd")) model["rd"] = f.rd;
  if (given("--table")) {
    model["table"] = f.table;
    if (!model.contains("type")) model["type"] = "table";
  }
  if (given("--tail-low")) model["tail_low"] = f.tail_low;
  if (given("--tail-high")) model["tail_high"] = f.tail_high;

  if (given("--route")) doc["route"] = f.route;
  if (given("--ttilde")) doc["ttilde"] = f.ttilde;
  if (given("--rtol")) doc["rtol"] = f.rtol;
  if (given("--delta")) doc["delta"] = f.delta;
  if (given("--step")) doc["step"] = f.step;
  if (given("--k")) doc["wave_number"] = f.k;
  if (given("--routes")) {
    std::vector<std::string> r;
    std::stringstream ss(f.routes);
    std::string item;
    while (std::getline(ss, item, ',')) r.push_back(item);
    doc["compare"] = r;
  }

  const bool modes = command == "modes";
  if (modes) {
    if (given("--ql-from") || given("--ql-to") || given("--points") || given("--log")) {
      json& q = doc["ql"];
      if (!q.is_object()) q = json{{"from", 0.01}, {"to", 20.0}, {"points", 100}, {"log", true}};
      if (given("--ql-from")) q["from"] = f.ql_from;
      if (given("--ql-to")) q["to"] = f.ql_to;
      if (given("--points")) q["points"] = f.points;
      if (given("--log")) q["log"] = true;
    }
  } else if (given("--param") || given("--from") || given("--to") || given("--points") || given("--log")) {
    json& s = doc["sweep"];
    if (!s.is_object()) s = json::object();
    if (given("--param")) s["param"] = f.param;
    if (given("--from")) s["from"] = f.from;
    if (given("--to")) s["to"] = f.to;
    if (given("--points")) s["points"] = f.points;
    if (given("--log")) s["log"] = true;
  }

  if (given("--omega-ref") || given("--omega-ref-ev") || given("--gap-m") || given("--temperature-k")) {
    json& u = doc["units"];
    if (!u.is_object()) u = json::object();
    if (given("--omega-ref")) {
      u.erase("omega_ref_ev");
      u["omega_ref"] = f.omega_ref;
    }
    if (given("--omega-ref-ev")) {
      u.erase("omega_ref");
      u["omega_ref_ev"] = f.omega_ref_ev;
    }
    if (given("--gap-m")) u["gap_m"] = f.gap_m;
    if (given("--temperature-k")) u["temperature_k"] = f.temperature_k;
  }

  if (given("--output") || given("--format")) {
    json& o = doc["output"];
    if (!o.is_object()) o = json::object();
    if (given("--output")) o["path"] = f.output;
    if (given("--format")) o["format"] = f.format;
  }
  if (given("--jobs")) doc["jobs"] = f.jobs;
  if (doc["model"].empty()) doc.erase("model");
  return doc;
}

void add_options(CLI::App& app, Flags& f) {
  app.add_option("--config", f.config_path, "JSON config; flags override its keys");
  app.add_flag("--dump-config", f.dump_config, "Print the merged config and exit");
  app.add_option("--model", f.model, "plasma | drude | conductivity | lorentz | table | hydrodynamic");
  app.add_option("--wp", f.wp, "Plasma frequency (reduced)");
  app.add_option("--gamma", f.gamma, "Constant damping rate");
  app.add_option("--gamma-residual", f.gamma_residual, "gamma(T) = residual + amplitude T^exponent");
  app.add_option("--gamma-amplitude", f.gamma_amplitude);
  app.add_option("--gamma-exponent", f.gamma_exponent);
  app.add_option("--sigma", f.sigma, "Constant conductivity");
  app.add_option("--sigma0", f.sigma0, "sigma(T) = sigma0 exp(-gap / T)");
  app.add_option("--sigma-gap", f.sigma_gap);
  app.add_option("--eps-lattice", f.eps_lattice, "Constant lattice permittivity");
  app.add_option("--oscillator", f.oscillators, "Lorentz oscillator f,w,g (repeatable)");
  app.add_option("--table", f.table, "CSV with header omega,im_eps");
  app.add_option("--tail-low", f.tail_low, "zero | drude | conductivity | dielectric | power:<p>");
  app.add_option("--tail-high", f.tail_high, "zero | drude | conductivity | dielectric | power:<p>");
  app.add_option("--rd", f.rd, "Debye radius (hydrodynamic)");
  app.add_option("--k", f.k, "Wave number for auditing a hydrodynamic model");
  app.add_option("--route", f.route, "matsubara | realaxis | zeroT | classical | modes");
  app.add_option("--routes", f.routes, "Two routes for compare, e.g. matsubara,realaxis");
  app.add_option("--ttilde", f.ttilde, "Reduced temperature");
  app.add_option("--rtol", f.rtol, "Relative tolerance");
  app.add_option("--delta", f.delta, "Real-axis shift for strictly real models");
  app.add_option("--step", f.step, "Finite-difference step for entropy (default T/4)");
  app.add_option("--param", f.param, "Sweep parameter: ttilde, l or a model key");
  app.add_option("--from", f.from);
  app.add_option("--to", f.to);
  app.add_option("--points", f.points);
  app.add_flag("--log", f.log, "Logarithmic spacing");
  app.add_option("--ql-from", f.ql_from);
  app.add_option("--ql-to", f.ql_to);
  app.add_option("--omega-ref", f.omega_ref, "Reference angular frequency in rad/s");
  app.add_option("--omega-ref-ev", f.omega_ref_ev, "Reference frequency as hbar Omega in eV");
  app.add_option("--gap-m", f.gap_m, "Gap in meters");
  app.add_option("--temperature-k", f.temperature_k, "Temperature in kelvin");
  app.add_option("--output", f.output, "Output file, - for stdout");
  app.add_option("--format", f.format, "csv | json");
  app.add_option("--jobs", f.jobs, "Worker threads (default $CASIMIR_LAB_JOBS or 1)");
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Non-retarded Casimir-Lifshitz pressure and dielectric model audits", "casimir_lab"};
  Flags f;
  add_options(app, f);
  app.require_subcommand(1);
  for (const char* name : {"pressure", "sweep", "audit", "modes", "entropy", "compare", "ingest-check"})
    app.add_subcommand(name)->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    const std::string command = app.get_subcommands().front()->get_name();
    json doc = merge(app, f, command);
    if (f.dump_config) {
      out << doc.dump(2) << "\n";
      return 0;
    }
    if (!doc.contains("jobs")) {
      if (const char* env = std::getenv("CASIMIR_LAB_JOBS")) {
        try {
          doc["jobs"] = std::stoi(env);
        } catch (const std::exception&) {
          throw DomainError("CASIMIR_LAB_JOBS must be a positive integer");
        }
      }
    }
    RunConfig c = parse_config(doc);
    return run_config(c, out, err);
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

} // namespace casimir::cli
