#include "config.hpp"

#include <cmath>
#include <set>

namespace casimir::cli {

namespace {

[[noreturn]] void invalid(const std::string& what) { throw DomainError(what); }

void check_keys(const json& j, const std::string& where, const std::set<std::string>& allowed) {
  if (!j.is_object()) invalid(where + " must be an object");
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) invalid("unknown key '" + key + "' in " + where);
}

double number(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) invalid(where + "." + key + " is required");
  if (!j.at(key).is_number()) invalid(where + "." + key + " must be a number");
  return j.at(key).get<double>();
}

double number_or(const json& j, const std::string& key, const std::string& where, double fallback) {
  return j.contains(key) ? number(j, key, where) : fallback;
}

std::string text(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) invalid(where + "." + key + " is required");
  if (!j.at(key).is_string()) invalid(where + "." + key + " must be a string");
  return j.at(key).get<std::string>();
}

TemperatureLaw damping_law(const json& model) {
  const json& g = model.at("gamma");
  if (g.is_number()) return TemperatureLaw::constant(g.get<double>());
  check_keys(g, "model.gamma", {"residual", "amplitude", "exponent"});
  return TemperatureLaw::power_law(number_or(g, "residual", "model.gamma", 0.0),
                                   number(g, "amplitude", "model.gamma"), number(g, "exponent", "model.gamma"));
}

TemperatureLaw conductivity_law(const json& model) {
  if (!model.contains("sigma")) invalid("model.sigma is required");
  const json& s = model.at("sigma");
  if (s.is_number()) return TemperatureLaw::constant(s.get<double>());
  check_keys(s, "model.sigma", {"sigma0", "gap"});
  return TemperatureLaw::activated(number(s, "sigma0", "model.sigma"), number(s, "gap", "model.sigma"));
}

std::vector<LorentzOscillator> oscillators(const json& model) {
  std::vector<LorentzOscillator> out;
  if (!model.contains("oscillators")) return out;
  const json& list = model.at("oscillators");
  if (!list.is_array()) invalid("model.oscillators must be an array of [f, w, g] triples");
  for (const auto& o : list) {
    if (!o.is_array() || o.size() != 3 || !o[0].is_number() || !o[1].is_number() || !o[2].is_number())
      invalid("model.oscillators entries must be [f, w, g] triples");
    out.push_back({o[0].get<double>(), o[1].get<double>(), o[2].get<double>()});
  }
  return out;
}

LatticeTerm lattice(const json& model) {
  if (model.contains("oscillators")) {
    if (model.contains("eps_lattice")) invalid("model.eps_lattice and model.oscillators are exclusive");
    return LatticeTerm(oscillators(model));
  }
  return LatticeTerm(number_or(model, "eps_lattice", "model", 1.0));
}

Grid parse_grid(const json& j, const std::string& where) {
  Grid g;
  g.from = number(j, "from", where);
  g.to = number(j, "to", where);
  const double points = number(j, "points", where);
  if (points < 1.0 || points != std::floor(points) || points > 1e6) invalid(where + ".points must be a positive integer");
  g.points = static_cast<int>(points);
  if (j.contains("log")) {
    if (!j.at("log").is_boolean()) invalid(where + ".log must be true or false");
    g.log = j.at("log").get<bool>();
  }
  if (g.log && !(g.from > 0.0 && g.to > 0.0)) invalid(where + ": a log grid needs positive end points");
  return g;
}

} // namespace

std::vector<double> Grid::values() const {
  std::vector<double> v(static_cast<std::size_t>(points));
  if (points == 1) {
    v[0] = from;
    return v;
  }
  for (int i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / (points - 1);
    v[static_cast<std::size_t>(i)] =
        log ? std::exp(std::log(from) + t * (std::log(to) - std::log(from))) : from + t * (to - from);
  }
  v.front() = from;
  v.back() = to;
  return v;
}

bool is_model_parameter(const std::string& name) {
  return name == "wp" || name == "gamma" || name == "sigma" || name == "eps_lattice" || name == "rd";
}

DielectricModel build_model(const json& model) {
  if (!model.is_object()) invalid("model must be an object");
  const std::string type = text(model, "type", "model");
  if (type == "plasma") {
    check_keys(model, "model", {"type", "wp"});
    return Plasma(number(model, "wp", "model"));
  }
  if (type == "drude") {
    check_keys(model, "model", {"type", "wp", "gamma", "eps_lattice", "oscillators"});
    if (!model.contains("gamma")) invalid("model.gamma is required");
    return Drude(number(model, "wp", "model"), damping_law(model), lattice(model));
  }
  if (type == "conductivity") {
    check_keys(model, "model", {"type", "sigma", "eps_lattice", "oscillators"});
    return Conductivity(lattice(model), conductivity_law(model));
  }
  if (type == "lorentz") {
    check_keys(model, "model", {"type", "oscillators"});
    return LorentzLattice(oscillators(model));
  }
  if (type == "table") {
    check_keys(model, "model", {"type", "table", "tail_low", "tail_high"});
    const TailLaw low = TailLaw::parse(text(model, "tail_low", "model"));
    const TailLaw high = TailLaw::parse(text(model, "tail_high", "model"));
    return read_table_csv(text(model, "table", "model"), low, high);
  }
  if (type == "hydrodynamic") {
    check_keys(model, "model", {"type", "wp", "gamma", "rd", "eps_lattice", "oscillators"});
    if (!model.contains("gamma")) invalid("model.gamma is required");
    return Hydrodynamic(number(model, "wp", "model"), damping_law(model), number(model, "rd", "model"),
                        lattice(model));
  }
  invalid("unknown model type '" + type + "' (plasma, drude, conductivity, lorentz, table, hydrodynamic)");
}

RunConfig parse_config(const json& doc) {
  check_keys(doc, "config",
             {"command", "model", "route", "ttilde", "rtol", "delta", "sweep", "units", "step", "compare", "ql",
              "wave_number", "output", "jobs"});
  RunConfig c;
  c.command = text(doc, "command", "config");
  static const std::set<std::string> commands{"pressure", "sweep", "audit", "modes", "entropy", "compare",
                                              "ingest-check"};
  if (!commands.count(c.command)) invalid("unknown command '" + c.command + "'");

  if (!doc.contains("model")) invalid("a model is required");
  c.model = doc.at("model");
  if (c.command != "ingest-check") build_model(c.model);

  if (doc.contains("route")) c.route = parse_route(text(doc, "route", "config"));
  if (doc.contains("ttilde")) {
    c.ttilde = number(doc, "ttilde", "config");
    if (!(*c.ttilde > 0.0)) invalid("ttilde must be > 0");
  }
  c.rtol = number_or(doc, "rtol", "config", c.rtol);
  if (!(c.rtol > 0.0 && c.rtol < 1.0)) invalid("rtol must be in (0, 1)");
  c.delta = number_or(doc, "delta", "config", c.delta);
  if (c.delta < 0.0) invalid("delta must be >= 0");
  if (doc.contains("step")) {
    c.step = number(doc, "step", "config");
    if (!(*c.step > 0.0)) invalid("step must be > 0");
  }
  c.wave_number = number_or(doc, "wave_number", "config", c.wave_number);
  if (!(c.wave_number > 0.0)) invalid("wave_number must be > 0");

  if (doc.contains("units")) {
    const json& u = doc.at("units");
    check_keys(u, "units", {"omega_ref", "omega_ref_ev", "gap_m", "temperature_k"});
    Units units;
    const bool rad = u.contains("omega_ref"), ev = u.contains("omega_ref_ev");
    if (rad == ev) invalid("units needs exactly one of omega_ref (rad/s) or omega_ref_ev");
    units.omega_ref = rad ? number(u, "omega_ref", "units") : number(u, "omega_ref_ev", "units") * kElectronVolt / kHbar;
    if (!u.contains("gap_m") || !u.contains("temperature_k"))
      invalid("units needs omega_ref, gap_m and temperature_k together");
    units.gap_m = number(u, "gap_m", "units");
    units.temperature_k = number(u, "temperature_k", "units");
    if (!(units.omega_ref > 0.0) || !(units.gap_m > 0.0) || !(units.temperature_k >= 0.0))
      invalid("units: omega_ref and gap_m must be > 0, temperature_k >= 0");
    if (c.ttilde) invalid("ttilde and units.temperature_k are exclusive");
    c.units = units;
  }

  if (doc.contains("sweep")) {
    const json& s = doc.at("sweep");
    check_keys(s, "sweep", {"param", "from", "to", "points", "log"});
    Sweep sw{text(s, "param", "sweep"), parse_grid(s, "sweep")};
    if (sw.param == "ttilde") {
      if (c.units) invalid("sweep over ttilde conflicts with the units block; sweep l or drop units");
      if (!(sw.grid.from > 0.0 && sw.grid.to > 0.0)) invalid("ttilde sweep needs positive end points");
    } else if (sw.param == "l") {
      if (!c.units) invalid("sweep over l needs the units block");
      if (!(sw.grid.from > 0.0 && sw.grid.to > 0.0)) invalid("l sweep needs positive end points");
    } else if (is_model_parameter(sw.param)) {
      if (!c.model.contains(sw.param) && !(sw.param == "eps_lattice" && !c.model.contains("oscillators")))
        invalid("sweep parameter '" + sw.param + "' is not a parameter of the model");
    } else {
      invalid("unknown sweep parameter '" + sw.param + "' (ttilde, l, wp, gamma, sigma, eps_lattice, rd)");
    }
    c.sweep = sw;
  }
  if (c.command == "sweep" && !c.sweep) invalid("sweep needs a sweep block (--param, --from, --to, --points)");

  if (doc.contains("compare")) {
    const json& r = doc.at("compare");
    if (!r.is_array() || r.size() != 2 || !r[0].is_string() || !r[1].is_string())
      invalid("compare must list two routes");
    c.compare = {parse_route(r[0].get<std::string>()), parse_route(r[1].get<std::string>())};
  }
  if (doc.contains("ql")) {
    check_keys(doc.at("ql"), "ql", {"from", "to", "points", "log"});
    c.ql = parse_grid(doc.at("ql"), "ql");
    if (!(c.ql.from > 0.0)) invalid("ql grid must be positive");
  }
  if (doc.contains("output")) {
    const json& o = doc.at("output");
    check_keys(o, "output", {"path", "format"});
    if (o.contains("path")) c.output = text(o, "path", "output");
    if (o.contains("format")) c.format = text(o, "format", "output");
    if (c.format != "csv" && c.format != "json") invalid("output.format must be csv or json");
  }
  if (doc.contains("jobs")) {
    const double j = number(doc, "jobs", "config");
    if (j < 1.0 || j != std::floor(j) || j > 1024) invalid("jobs must be a positive integer");
    c.jobs = static_cast<unsigned>(j);
  }
  return c;
}

} // namespace casimir::cli
