#include "heatbound/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "heatbound/csv.hpp"

namespace heatbound {

namespace pt = boost::property_tree;

namespace {

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"system", {"omega0", "vx", "vy", "vz"}},
      {"bath", {"spectral_density", "coupling", "cutoff", "frequencies", "couplings_sq", "beta"}},
      {"solver", {"abs_tol", "rel_tol", "max_steps", "t_final", "report_step"}},
      {"sweep", {"radial", "angular", "r_max", "t_bar", "horizon", "threads"}},
      {"oracle",
       {"frequencies", "couplings", "n_max", "dimension_limit", "truncation_budget", "times",
        "scaling_frequencies", "scaling_couplings", "scaling_n_max", "scales", "scaling_times"}},
      {"output", {"directory", "svg"}},
  };
  return keys;
}

// "section.key" -> 1-based line of its definition.
std::map<std::string, std::size_t> key_lines(const std::string& text) {
  std::map<std::string, std::size_t> lines;
  std::istringstream in(text);
  std::string line;
  std::string section;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    boost::algorithm::trim(line);
    if (line.empty() || line[0] == ';' || line[0] == '#') continue;
    if (line.front() == '[' && line.back() == ']') {
      section = boost::algorithm::trim_copy(line.substr(1, line.size() - 2));
      lines.emplace(section, n);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    lines.emplace(section + "." + boost::algorithm::trim_copy(line.substr(0, eq)), n);
  }
  return lines;
}

class Reader {
 public:
  Reader(const pt::ptree& tree, std::map<std::string, std::size_t> lines, std::string source)
      : tree_(tree), lines_(std::move(lines)), source_(std::move(source)) {}

  [[noreturn]] void fail(const std::string& field, const std::string& what) const {
    std::optional<std::size_t> line;
    if (auto it = lines_.find(field); it != lines_.end()) line = it->second;
    throw ConfigError(field, line, source_ + ": " + what);
  }

  std::optional<std::string> raw(const std::string& field) const {
    if (auto v = tree_.get_optional<std::string>(pt::ptree::path_type(field, '.'))) {
      return boost::algorithm::trim_copy(*v);
    }
    return std::nullopt;
  }

  void number(const std::string& field, double& out) const {
    if (auto v = raw(field)) out = to_double(field, *v);
  }

  void count(const std::string& field, std::size_t& out) const {
    if (auto v = raw(field)) {
      const double d = to_double(field, *v);
      if (d < 0.0 || d != std::floor(d) || d > 1e12) fail(field, "expected a non-negative integer");
      out = static_cast<std::size_t>(d);
    }
  }

  void flag(const std::string& field, bool& out) const {
    if (auto v = raw(field)) {
      const std::string s = boost::algorithm::to_lower_copy(*v);
      if (s == "true" || s == "1" || s == "yes" || s == "on") {
        out = true;
      } else if (s == "false" || s == "0" || s == "no" || s == "off") {
        out = false;
      } else {
        fail(field, "expected a boolean");
      }
    }
  }

  void list(const std::string& field, std::vector<double>& out) const {
    if (auto v = raw(field)) {
      out.clear();
      if (v->empty()) return;
      std::vector<std::string> parts;
      boost::algorithm::split(parts, *v, boost::algorithm::is_any_of(","));
      for (auto& p : parts) out.push_back(to_double(field, boost::algorithm::trim_copy(p)));
    }
  }

  void modes(const std::string& freq_field, const std::string& coupling_field,
             std::vector<OracleMode>& out) const {
    std::vector<double> w;
    std::vector<double> g;
    for (const auto& m : out) {
      w.push_back(m.frequency);
      g.push_back(m.coupling);
    }
    list(freq_field, w);
    list(coupling_field, g);
    if (w.size() != g.size()) fail(coupling_field, "needs one entry per frequency");
    out.clear();
    for (std::size_t i = 0; i < w.size(); ++i) out.push_back({w[i], g[i]});
  }

  double to_double(const std::string& field, const std::string& s) const {
    try {
      return csv::parse_number(s);
    } catch (const std::exception&) {
      fail(field, "cannot parse '" + s + "' as a number");
    }
  }

  const std::map<std::string, std::size_t>& lines() const { return lines_; }
  const std::string& source() const { return source_; }

 private:
  const pt::ptree& tree_;
  std::map<std::string, std::size_t> lines_;
  std::string source_;
};

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += csv::format_number(v[i]);
  }
  return out;
}

void check(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw ConfigError(field, std::nullopt, what);
}

void check_times(const std::vector<double>& times, const std::string& field) {
  for (std::size_t i = 0; i < times.size(); ++i) {
    check(std::isfinite(times[i]) && times[i] >= 0.0, field, "times must be finite and >= 0");
    check(i == 0 || times[i] > times[i - 1], field, "times must be strictly increasing");
  }
}

}  // namespace

ConfigError::ConfigError(const std::string& field, std::optional<std::size_t> line,
                         const std::string& what)
    : std::runtime_error((line ? "line " + std::to_string(*line) + ": " : std::string()) + field +
                         ": " + what),
      field_(field),
      line_(line) {}

TruncatedEnvironment OracleConfig::environment() const {
  TruncatedEnvironment env;
  env.modes = modes;
  env.n_max = n_max;
  env.dimension_limit = dimension_limit;
  env.truncation_budget = truncation_budget;
  return env;
}

TruncatedEnvironment OracleConfig::scaling_environment() const {
  TruncatedEnvironment env;
  env.modes = scaling_modes;
  env.n_max = scaling_n_max;
  env.dimension_limit = dimension_limit;
  env.truncation_budget = truncation_budget;
  return env;
}

void validate(const RunConfig& c) {
  check(c.omega0 == 1.0, "system.omega0", "the qubit splitting is the frequency unit and must be 1");
  const double ax = std::abs(c.initial.x);
  const double ay = std::abs(c.initial.y);
  const double az = std::abs(c.initial.z);
  const char* largest = az >= ax && az >= ay ? "system.vz" : (ay >= ax ? "system.vy" : "system.vx");
  check(std::isfinite(c.initial.norm()) && c.initial.norm() <= 1.0 + 1e-12, largest,
        "initial Bloch vector must lie in the unit ball");
  if (const auto* ohm = std::get_if<OhmicExpCutoff>(&c.spectral_density)) {
    check(std::isfinite(ohm->coupling) && ohm->coupling >= 0.0, "bath.coupling", "must be >= 0");
    check(std::isfinite(ohm->cutoff) && ohm->cutoff > 0.0, "bath.cutoff", "must be > 0");
  } else {
    for (const auto& m : std::get<DiscreteModes>(c.spectral_density).modes) {
      check(std::isfinite(m.frequency) && m.frequency > 0.0, "bath.frequencies", "must be > 0");
      check(std::isfinite(m.coupling_sq) && m.coupling_sq >= 0.0, "bath.couplings_sq",
            "must be >= 0");
    }
  }
  check(std::isfinite(c.bath.beta) && c.bath.beta > 0.0, "bath.beta", "must be > 0");
  check(c.solver.abs_tol > 0.0 && c.solver.abs_tol < 1.0, "solver.abs_tol", "must lie in (0, 1)");
  check(c.solver.rel_tol > 0.0 && c.solver.rel_tol < 1.0, "solver.rel_tol", "must lie in (0, 1)");
  check(c.solver.max_steps > 0, "solver.max_steps", "must be > 0");
  check(std::isfinite(c.t_final) && c.t_final > 0.0, "solver.t_final", "must be > 0");
  check(std::isfinite(c.report_step) && c.report_step > 0.0 && c.report_step <= c.t_final,
        "solver.report_step", "must lie in (0, t_final]");
  check(std::isfinite(c.grid.r_max) && c.grid.r_max >= 0.0 && c.grid.r_max < 1.0, "sweep.r_max",
        "must lie in [0, 1)");
  check(c.grid.size() <= 1000000, "sweep.radial", "grid too large");
  check(std::isfinite(c.t_bar) && c.t_bar > 0.0, "sweep.t_bar", "must be > 0");
  check(std::isfinite(c.horizon) && c.horizon >= c.t_bar, "sweep.horizon", "must be >= t_bar");
  check(c.threads >= 1 && c.threads <= 1024, "sweep.threads", "must lie in [1, 1024]");

  const auto& o = c.oracle;
  for (const auto& m : o.modes) {
    check(std::isfinite(m.frequency) && m.frequency > 0.0, "oracle.frequencies", "must be > 0");
    check(std::isfinite(m.coupling), "oracle.couplings", "must be finite");
  }
  for (const auto& m : o.scaling_modes) {
    check(std::isfinite(m.frequency) && m.frequency > 0.0, "oracle.scaling_frequencies",
          "must be > 0");
    check(std::isfinite(m.coupling), "oracle.scaling_couplings", "must be finite");
  }
  check(o.n_max >= 1, "oracle.n_max", "must be >= 1");
  check(o.scaling_n_max >= 1, "oracle.scaling_n_max", "must be >= 1");
  check(o.dimension_limit >= 2, "oracle.dimension_limit", "must be >= 2");
  check(o.truncation_budget > 0.0 && o.truncation_budget < 1.0, "oracle.truncation_budget",
        "must lie in (0, 1)");
  check_times(o.times, "oracle.times");
  check_times(o.scaling_times, "oracle.scaling_times");
  check(!o.scaling_times.empty(), "oracle.scaling_times", "must not be empty");
  for (double s : o.scales) check(std::isfinite(s) && s >= 0.0, "oracle.scales", "must be >= 0");
  check(!c.output_directory.empty(), "output.directory", "must not be empty");
}

RunConfig parse_config(const std::string& text, const std::string& source) {
  pt::ptree tree;
  try {
    std::istringstream in(text);
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("", e.line() ? std::optional<std::size_t>(e.line()) : std::nullopt,
                      source + ": " + e.message());
  }
  const Reader r(tree, key_lines(text), source);

  for (const auto& [section, body] : tree) {
    const auto it = known_keys().find(section);
    if (it == known_keys().end()) r.fail(section, "unknown section");
    if (!body.data().empty()) r.fail(section, "expected a section");
    for (const auto& [key, value] : body) {
      if (!it->second.count(key)) r.fail(section + "." + key, "unknown key");
    }
  }

  RunConfig c;
  r.number("system.omega0", c.omega0);
  r.number("system.vx", c.initial.x);
  r.number("system.vy", c.initial.y);
  r.number("system.vz", c.initial.z);

  const std::string kind = boost::algorithm::to_lower_copy(r.raw("bath.spectral_density").value_or("ohmic"));
  if (kind == "ohmic") {
    OhmicExpCutoff ohm;
    r.number("bath.coupling", ohm.coupling);
    r.number("bath.cutoff", ohm.cutoff);
    if (r.raw("bath.frequencies") || r.raw("bath.couplings_sq")) {
      r.fail("bath.frequencies", "only valid with spectral_density = discrete");
    }
    c.spectral_density = ohm;
  } else if (kind == "discrete") {
    std::vector<double> w;
    std::vector<double> g2;
    r.list("bath.frequencies", w);
    r.list("bath.couplings_sq", g2);
    if (w.size() != g2.size()) r.fail("bath.couplings_sq", "needs one entry per frequency");
    if (r.raw("bath.coupling") || r.raw("bath.cutoff")) {
      r.fail("bath.coupling", "only valid with spectral_density = ohmic");
    }
    DiscreteModes modes;
    for (std::size_t i = 0; i < w.size(); ++i) modes.modes.push_back({w[i], g2[i]});
    c.spectral_density = modes;
  } else {
    r.fail("bath.spectral_density", "expected 'ohmic' or 'discrete'");
  }
  r.number("bath.beta", c.bath.beta);

  r.number("solver.abs_tol", c.solver.abs_tol);
  r.number("solver.rel_tol", c.solver.rel_tol);
  r.count("solver.max_steps", c.solver.max_steps);
  r.number("solver.t_final", c.t_final);
  r.number("solver.report_step", c.report_step);

  r.count("sweep.radial", c.grid.radial);
  r.count("sweep.angular", c.grid.angular);
  r.number("sweep.r_max", c.grid.r_max);
  r.number("sweep.t_bar", c.t_bar);
  c.horizon = c.t_bar;
  r.number("sweep.horizon", c.horizon);
  r.count("sweep.threads", c.threads);

  auto& o = c.oracle;
  r.modes("oracle.frequencies", "oracle.couplings", o.modes);
  r.count("oracle.n_max", o.n_max);
  r.count("oracle.dimension_limit", o.dimension_limit);
  r.number("oracle.truncation_budget", o.truncation_budget);
  r.list("oracle.times", o.times);
  r.modes("oracle.scaling_frequencies", "oracle.scaling_couplings", o.scaling_modes);
  r.count("oracle.scaling_n_max", o.scaling_n_max);
  r.list("oracle.scales", o.scales);
  r.list("oracle.scaling_times", o.scaling_times);

  if (auto d = r.raw("output.directory")) c.output_directory = *d;
  r.flag("output.svg", c.svg);

  try {
    validate(c);
  } catch (const ConfigError& e) {
    std::string what = e.what();
    what = what.substr(what.find(": ") + 2);
    r.fail(e.field(), what);
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", std::nullopt, path.string() + ": cannot open configuration file");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path.string());
}

std::string to_ini(const RunConfig& c) {
  std::ostringstream out;
  auto n = [](double v) { return csv::format_number(v); };
  out << "[system]\nomega0 = " << n(c.omega0) << "\nvx = " << n(c.initial.x)
      << "\nvy = " << n(c.initial.y) << "\nvz = " << n(c.initial.z) << "\n\n[bath]\n";
  if (const auto* ohm = std::get_if<OhmicExpCutoff>(&c.spectral_density)) {
    out << "spectral_density = ohmic\ncoupling = " << n(ohm->coupling)
        << "\ncutoff = " << n(ohm->cutoff) << "\n";
  } else {
    std::vector<double> w;
    std::vector<double> g2;
    for (const auto& m : std::get<DiscreteModes>(c.spectral_density).modes) {
      w.push_back(m.frequency);
      g2.push_back(m.coupling_sq);
    }
    out << "spectral_density = discrete\nfrequencies = " << join(w)
        << "\ncouplings_sq = " << join(g2) << "\n";
  }
  out << "beta = " << n(c.bath.beta) << "\n\n[solver]\nabs_tol = " << n(c.solver.abs_tol)
      << "\nrel_tol = " << n(c.solver.rel_tol) << "\nmax_steps = " << c.solver.max_steps
      << "\nt_final = " << n(c.t_final) << "\nreport_step = " << n(c.report_step)
      << "\n\n[sweep]\nradial = " << c.grid.radial << "\nangular = " << c.grid.angular
      << "\nr_max = " << n(c.grid.r_max) << "\nt_bar = " << n(c.t_bar)
      << "\nhorizon = " << n(c.horizon) << "\nthreads = " << c.threads << "\n\n[oracle]\n";
  auto modes = [&](const char* wf, const char* gf, const std::vector<OracleMode>& m) {
    std::vector<double> w;
    std::vector<double> g;
    for (const auto& x : m) {
      w.push_back(x.frequency);
      g.push_back(x.coupling);
    }
    out << wf << " = " << join(w) << "\n" << gf << " = " << join(g) << "\n";
  };
  const auto& o = c.oracle;
  modes("frequencies", "couplings", o.modes);
  out << "n_max = " << o.n_max << "\ndimension_limit = " << o.dimension_limit
      << "\ntruncation_budget = " << n(o.truncation_budget) << "\ntimes = " << join(o.times)
      << "\n";
  modes("scaling_frequencies", "scaling_couplings", o.scaling_modes);
  out << "scaling_n_max = " << o.scaling_n_max << "\nscales = " << join(o.scales)
      << "\nscaling_times = " << join(o.scaling_times) << "\n\n[output]\ndirectory = "
      << c.output_directory << "\nsvg = " << (c.svg ? "true" : "false") << "\n";
  return out.str();
}

}  // namespace heatbound
