#include "impact/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace impact {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string vec(const Vec2& v) { return num(v.x()) + ", " + num(v.y()); }

struct Entry {
  std::string value;
  int line;
};

// Typed access to the raw key map. Every lookup marks the key as known so
// leftovers can be reported as unknown.
class Reader {
 public:
  Reader(std::map<std::string, Entry> entries, std::vector<std::string>& issues)
      : entries_(std::move(entries)), issues_(issues) {}

  bool has(const std::string& path) const { return entries_.count(path) > 0; }

  std::optional<std::string> text(const std::string& path, bool required) {
    used_.insert(path);
    auto it = entries_.find(path);
    if (it == entries_.end()) {
      if (required) issues_.push_back(path + ": missing required key");
      return std::nullopt;
    }
    return it->second.value;
  }

  template <class Check>
  double number(const std::string& path, double fallback, bool required, Check ok, const char* rule) {
    auto t = text(path, required);
    if (!t) return fallback;
    double x = 0.0;
    if (!parse_double(*t, x)) {
      issues_.push_back(path + ": '" + *t + "' is not a number");
      return fallback;
    }
    if (!ok(x)) issues_.push_back(path + ": value " + *t + " violates " + rule);
    return x;
  }

  int integer(const std::string& path, int fallback, int min_value) {
    auto t = text(path, false);
    if (!t) return fallback;
    std::size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(*t, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != t->size()) {
      issues_.push_back(path + ": '" + *t + "' is not an integer");
      return fallback;
    }
    if (v < min_value) issues_.push_back(path + ": value " + *t + " violates >= " + std::to_string(min_value));
    return v;
  }

  Vec2 pair(const std::string& path, const Vec2& fallback, bool required) {
    auto t = text(path, required);
    if (!t) return fallback;
    const auto comma = t->find(',');
    double a = 0.0, b = 0.0;
    if (comma == std::string::npos || !parse_double(trim(t->substr(0, comma)), a) ||
        !parse_double(trim(t->substr(comma + 1)), b)) {
      issues_.push_back(path + ": '" + *t + "' is not a pair 'x, y'");
      return fallback;
    }
    return Vec2(a, b);
  }

  std::string choice(const std::string& path, const std::vector<std::string>& options, bool required,
                     const std::string& fallback) {
    auto t = text(path, required);
    if (!t) return fallback;
    for (const auto& o : options)
      if (*t == o) return o;
    std::string list;
    for (const auto& o : options) list += (list.empty() ? "" : "|") + o;
    issues_.push_back(path + ": '" + *t + "' is not one of " + list);
    return fallback;
  }

  void report_unknown() {
    for (const auto& [path, e] : entries_)
      if (!used_.count(path)) issues_.push_back(path + ": unknown key (line " + std::to_string(e.line) + ")");
  }

 private:
  static bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    std::size_t pos = 0;
    try {
      out = std::stod(s, &pos);
    } catch (const std::exception&) {
      return false;
    }
    return pos == s.size() && std::isfinite(out);
  }

  std::map<std::string, Entry> entries_;
  std::set<std::string> used_;
  std::vector<std::string>& issues_;
};

const auto positive = [](double x) { return x > 0.0; };
const auto non_negative = [](double x) { return x >= 0.0; };
const auto any_value = [](double) { return true; };

}  // namespace

ConfigError::ConfigError(std::vector<std::string> issues)
    : std::runtime_error([&] {
        std::string msg = "invalid configuration:";
        for (const auto& i : issues) msg += "\n  " + i;
        return msg;
      }()),
      issues_(std::move(issues)) {}

bool ScenarioConfig::operator==(const ScenarioConfig& o) const {
  return serialize_config(*this) == serialize_config(o);
}

ScenarioConfig parse_config(const std::string& text) {
  std::vector<std::string> issues;
  std::map<std::string, Entry> entries;
  std::istringstream in(text);
  std::string raw, section;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        issues.push_back("line " + std::to_string(line_no) + ": malformed section header");
        continue;
      }
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      issues.push_back("line " + std::to_string(line_no) + ": expected 'key = value'");
      continue;
    }
    if (section.empty()) {
      issues.push_back("line " + std::to_string(line_no) + ": key outside any section");
      continue;
    }
    const std::string path = section + "." + trim(line.substr(0, eq));
    if (entries.count(path)) {
      issues.push_back(path + ": duplicate key (line " + std::to_string(line_no) + ")");
      continue;
    }
    entries[path] = {trim(line.substr(eq + 1)), line_no};
  }

  Reader r(std::move(entries), issues);
  ScenarioConfig c;

  const std::string shape = r.choice("geometry.shape", {"disk", "annulus"}, true, "disk");
  const Vec2 center = r.pair("geometry.center", Vec2(100.0, 100.0), true);
  if (shape == "disk") {
    DiskGeometry g{center, r.number("geometry.radius", 10.0, true, positive, "> 0")};
    c.geometry = g;
  } else {
    AnnulusGeometry g{center, r.number("geometry.r_inner", 9.0, true, positive, "> 0"),
                      r.number("geometry.r_outer", 10.0, true, positive, "> 0")};
    if (g.r_inner >= g.r_outer) issues.push_back("geometry.r_inner: must be smaller than geometry.r_outer");
    c.geometry = g;
  }
  c.target_h = r.number("geometry.target_h", 1.0, true, positive, "> 0");
  if (r.has("geometry.initial_clearance"))
    c.initial_clearance = r.number("geometry.initial_clearance", 0.0, false, any_value, "");

  const std::string model = r.choice("material.model", {"svk", "ogden"}, true, "svk");
  if (model == "svk") {
    SvkParams p;
    p.young = r.number("material.young", 1.0, true, positive, "> 0");
    p.poisson = r.number("material.poisson", 0.0, true, [](double x) { return x >= 0.0 && x < 0.5; }, "[0, 0.5)");
    c.material = p;
  } else {
    OgdenParams p;
    p.c1 = r.number("material.c1", 1.0, true, positive, "> 0");
    p.c2 = r.number("material.c2", 0.0, true, non_negative, ">= 0");
    p.d = r.number("material.d", 0.0, true, non_negative, ">= 0");
    c.material = p;
  }
  c.density = r.number("material.density", 1.0, true, positive, "> 0");

  c.dt = r.number("time.dt", 1e-3, true, positive, "> 0");
  c.final_time = r.number("time.final_time", 1.0, true, positive, "> 0");
  if (c.final_time < c.dt) issues.push_back("time.final_time: must be at least time.dt");

  c.initial_displacement = r.pair("initial.displacement", Vec2::Zero(), false);
  c.initial_velocity = r.pair("initial.velocity", Vec2::Zero(), true);

  const std::string law = r.choice("contact.law", {"inc", "snc"}, true, "inc");
  c.normal_law.kind = law == "snc" ? NormalLawKind::SNC : NormalLawKind::INC;
  c.normal_law.c_nu = r.number("contact.c_nu", 1.0, true, positive, "> 0");
  c.normal_law.alpha = r.number("contact.alpha", 2.0, true, [](double a) { return a >= 2.0; }, "alpha >= 2");
  c.friction.mu = r.number("contact.mu", 0.0, false, non_negative, ">= 0");
  c.friction.c_tau = r.number("contact.c_tau", 1e3, false, positive, "> 0");
  c.foundation_height = r.number("contact.foundation_height", 0.0, false, any_value, "");

  c.solver.epsilon = r.number("solver.epsilon", 1e-8, false, positive, "> 0");
  c.solver.max_outer_iters = r.integer("solver.max_outer_iters", 50, 1);
  c.solver.linear_tol = r.number("solver.linear_tol", 1e-8, false, positive, "> 0");

  if (auto dir = r.text("output.directory", false)) c.output_dir = *dir;
  c.vtk_stride = r.integer("output.vtk_stride", 0, 0);

  r.report_unknown();
  if (!issues.empty()) throw ConfigError(std::move(issues));
  return c;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({path + ": cannot read file"});
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const ScenarioConfig& c) {
  std::ostringstream out;
  out << "[geometry]\n";
  if (const auto* d = std::get_if<DiskGeometry>(&c.geometry)) {
    out << "shape = disk\ncenter = " << vec(d->center) << "\nradius = " << num(d->radius) << '\n';
  } else {
    const auto& a = std::get<AnnulusGeometry>(c.geometry);
    out << "shape = annulus\ncenter = " << vec(a.center) << "\nr_inner = " << num(a.r_inner)
        << "\nr_outer = " << num(a.r_outer) << '\n';
  }
  out << "target_h = " << num(c.target_h) << '\n';
  if (c.initial_clearance) out << "initial_clearance = " << num(*c.initial_clearance) << '\n';

  out << "\n[material]\n";
  if (const auto* s = std::get_if<SvkParams>(&c.material)) {
    out << "model = svk\nyoung = " << num(s->young) << "\npoisson = " << num(s->poisson) << '\n';
  } else {
    const auto& o = std::get<OgdenParams>(c.material);
    out << "model = ogden\nc1 = " << num(o.c1) << "\nc2 = " << num(o.c2) << "\nd = " << num(o.d) << '\n';
  }
  out << "density = " << num(c.density) << '\n';

  out << "\n[time]\ndt = " << num(c.dt) << "\nfinal_time = " << num(c.final_time) << '\n';
  out << "\n[initial]\ndisplacement = " << vec(c.initial_displacement) << "\nvelocity = " << vec(c.initial_velocity)
      << '\n';
  out << "\n[contact]\nlaw = " << (c.normal_law.kind == NormalLawKind::SNC ? "snc" : "inc")
      << "\nc_nu = " << num(c.normal_law.c_nu) << "\nalpha = " << num(c.normal_law.alpha)
      << "\nmu = " << num(c.friction.mu) << "\nc_tau = " << num(c.friction.c_tau)
      << "\nfoundation_height = " << num(c.foundation_height) << '\n';
  out << "\n[solver]\nepsilon = " << num(c.solver.epsilon) << "\nmax_outer_iters = " << c.solver.max_outer_iters
      << "\nlinear_tol = " << num(c.solver.linear_tol) << '\n';
  out << "\n[output]\ndirectory = " << c.output_dir << "\nvtk_stride = " << c.vtk_stride << '\n';
  return out.str();
}

std::uint64_t config_hash(const ScenarioConfig& config) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : serialize_config(config)) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

const std::vector<std::string>& sweep_parameters() {
  static const std::vector<std::string> names{"c_nu", "alpha", "dt", "target_h", "mu"};
  return names;
}

void set_parameter(ScenarioConfig& c, const std::string& name, double value) {
  auto reject = [&](const std::string& rule) {
    throw ConfigError({name + ": value " + num(value) + " violates " + rule});
  };
  if (!std::isfinite(value)) reject("finite");
  if (name == "c_nu") {
    if (!(value > 0.0)) reject("> 0");
    c.normal_law.c_nu = value;
  } else if (name == "alpha") {
    if (!(value >= 2.0)) reject("alpha >= 2");
    c.normal_law.alpha = value;
  } else if (name == "dt") {
    if (!(value > 0.0) || value > c.final_time) reject("0 < dt <= final_time");
    c.dt = value;
  } else if (name == "target_h") {
    if (!(value > 0.0)) reject("> 0");
    c.target_h = value;
  } else if (name == "mu") {
    if (!(value >= 0.0)) reject(">= 0");
    c.friction.mu = value;
  } else {
    throw ConfigError({name + ": not a sweepable parameter (c_nu, alpha, dt, target_h, mu)"});
  }
}

}  // namespace impact
