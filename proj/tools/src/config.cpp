#include "nsreg/cli/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "nsreg/diagnostics/criteria.hpp"
#include "nsreg/solver/scenarios.hpp"

namespace nsreg::cli {
namespace {

[[noreturn]] void fail(const YAML::Node& n, const std::string& msg) {
  const auto mark = n.Mark();
  if (mark.line >= 0) throw ConfigError("line " + std::to_string(mark.line + 1) + ": " + msg);
  throw ConfigError(msg);
}

void check_keys(const YAML::Node& map, const std::set<std::string>& allowed, const std::string& where) {
  if (!map.IsMap()) fail(map, where + " must be a mapping");
  for (const auto& kv : map) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.count(key)) fail(kv.first, "unknown key '" + key + "' in " + where);
  }
}

template <class T>
T read(const YAML::Node& n, const std::string& what) {
  if (!n.IsScalar()) fail(n, what + " must be a scalar");
  try {
    return n.as<T>();
  } catch (const YAML::BadConversion&) {
    fail(n, "cannot read " + what + " from '" + n.Scalar() + "'");
  }
}

template <class T>
void maybe(const YAML::Node& map, const char* key, T& out, const std::string& where) {
  if (const auto n = map[key]) out = read<T>(n, where + "." + key);
}

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? ".inf" : "-.inf";
  if (std::isnan(v)) return ".nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, res.ptr);
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

void validate_request(const DiagnosticRequest& r, const YAML::Node& node) {
  auto need = [&](bool present, const char* what) {
    if (!present) fail(node, "diagnostic '" + r.kind + "' needs " + what);
  };
  try {
    if (r.kind == "prodi_serrin_log" || r.kind == "riccati") {
      need(r.p && r.q, "p and q");
      require_serrin_pair(*r.p, *r.q);
    } else if (r.kind == "theta") {
      need(r.p && r.q && r.theta, "theta, p and q");
      (void)theta_from_string(*r.theta);
      if (!(*r.p > 0.0) || !(*r.q >= 1.0)) fail(node, "theta needs p > 0 and q >= 1");
    } else if (r.kind == "bkm") {
    } else if (r.kind == "orlicz") {
      need(r.q.has_value(), "q");
      if (!(*r.q > 1.0) || std::isinf(*r.q)) fail(node, "orlicz needs 1 < q < inf");
    } else if (r.kind == "velocity_lq") {
      need(r.q.has_value(), "q");
      if (!(*r.q >= 1.0)) fail(node, "velocity_lq needs q >= 1");
    } else if (r.kind == "derivative_lq") {
      need(r.q && r.order, "order and q");
      if (*r.order < 0 || *r.order > 4) fail(node, "derivative order must lie in [0, 4]");
      if (!(*r.q >= 1.0)) fail(node, "derivative_lq needs q >= 1");
    } else if (r.kind == "fgt_integral") {
      need(r.order.has_value(), "order");
      if (*r.order < 1 || *r.order > 4) fail(node, "fgt_integral order must lie in [1, 4]");
    } else {
      fail(node, "unknown diagnostic '" + r.kind + "'");
    }
  } catch (const std::invalid_argument& e) {
    fail(node, e.what());
  }
}

Vec3 read_point(const YAML::Node& n) {
  if (!n.IsSequence() || n.size() != 3) fail(n, "probe must be a list of three numbers");
  return {read<double>(n[0], "probe"), read<double>(n[1], "probe"), read<double>(n[2], "probe")};
}

std::vector<double> read_list(const YAML::Node& n, const std::string& what) {
  if (!n.IsSequence()) fail(n, what + " must be a list");
  std::vector<double> v;
  for (const auto& e : n) v.push_back(read<double>(e, what));
  return v;
}

}  // namespace

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names{"scalar_oracle", "magnetization_oracle",
                                              "vorticity_oracle", "measure_preservation",
                                              "gronwall", "composition", "ntilde"};
  return names;
}

bool RunConfig::operator==(const RunConfig& o) const {
  const auto& a = solver;
  const auto& b = o.solver;
  return scenario == o.scenario && seed == o.seed && output == o.output && a.n == b.n &&
         a.dt == b.dt && a.viscosity == b.viscosity && a.dealias == b.dealias &&
         a.snapshot_interval == b.snapshot_interval && a.end_time == b.end_time &&
         sde.particles == o.sde.particles && sde.step == o.sde.step && sde.seed == o.sde.seed &&
         sde.interpolation == o.sde.interpolation && diagnostics == o.diagnostics && fk == o.fk &&
         fgt == o.fgt;
}

RunConfig parse_config(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError("line " + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
  RunConfig c;
  if (!root || root.IsNull()) return c;
  check_keys(root, {"scenario", "seed", "output", "solver", "sde", "diagnostics", "fk", "fgt"}, "config");

  maybe(root, "scenario", c.scenario, "scenario");
  if (const auto n = root["scenario"]) {
    try {
      (void)scenario_from_string(c.scenario);
    } catch (const std::invalid_argument& e) {
      fail(n, e.what());
    }
  }
  maybe(root, "seed", c.seed, "seed");
  maybe(root, "output", c.output, "output");
  c.sde.seed = c.seed;

  if (const auto s = root["solver"]) {
    check_keys(s, {"n", "dt", "viscosity", "dealias", "snapshot_interval", "end_time"}, "solver");
    maybe(s, "n", c.solver.n, "solver");
    maybe(s, "dt", c.solver.dt, "solver");
    maybe(s, "viscosity", c.solver.viscosity, "solver");
    maybe(s, "dealias", c.solver.dealias, "solver");
    maybe(s, "snapshot_interval", c.solver.snapshot_interval, "solver");
    maybe(s, "end_time", c.solver.end_time, "solver");
    try {
      c.solver.validate();
    } catch (const std::invalid_argument& e) {
      fail(s, e.what());
    }
  } else {
    c.solver.validate();
  }

  if (const auto s = root["sde"]) {
    check_keys(s, {"particles", "step", "interpolation"}, "sde");
    if (const auto n = s["particles"]) {
      const auto v = read<long long>(n, "sde.particles");
      if (v <= 0) fail(n, "sde.particles must be positive");
      c.sde.particles = static_cast<std::size_t>(v);
    }
    maybe(s, "step", c.sde.step, "sde");
    if (const auto n = s["interpolation"]) {
      try {
        c.sde.interpolation = interpolation_from_string(read<std::string>(n, "sde.interpolation"));
      } catch (const std::invalid_argument& e) {
        fail(n, e.what());
      }
    }
    try {
      c.sde.validate();
    } catch (const std::invalid_argument& e) {
      fail(s, e.what());
    }
  }

  if (const auto d = root["diagnostics"]) {
    if (!d.IsSequence() && !d.IsNull()) fail(d, "diagnostics must be a list");
    for (const auto& item : d) {
      check_keys(item, {"kind", "p", "q", "order", "theta"}, "diagnostic");
      DiagnosticRequest r;
      if (!item["kind"]) fail(item, "diagnostic needs a kind");
      r.kind = read<std::string>(item["kind"], "kind");
      if (const auto n = item["p"]) r.p = read<double>(n, "p");
      if (const auto n = item["q"]) r.q = read<double>(n, "q");
      if (const auto n = item["order"]) r.order = read<int>(n, "order");
      if (const auto n = item["theta"]) r.theta = read<std::string>(n, "theta");
      validate_request(r, item);
      c.diagnostics.push_back(std::move(r));
    }
  }

  if (const auto f = root["fk"]) {
    check_keys(f, {"checks", "T0", "t", "probes", "q", "quadrature", "halvings"}, "fk");
    if (const auto n = f["checks"]) {
      if (!n.IsSequence()) fail(n, "fk.checks must be a list");
      for (const auto& e : n) {
        const auto name = read<std::string>(e, "check");
        const auto& known = known_checks();
        if (std::find(known.begin(), known.end(), name) == known.end())
          fail(e, "unknown check '" + name + "'");
        c.fk.checks.push_back(name);
      }
    }
    maybe(f, "T0", c.fk.T0, "fk");
    maybe(f, "t", c.fk.t, "fk");
    maybe(f, "q", c.fk.q, "fk");
    maybe(f, "quadrature", c.fk.quadrature, "fk");
    maybe(f, "halvings", c.fk.halvings, "fk");
    if (const auto n = f["probes"]) {
      if (!n.IsSequence() || n.size() == 0) fail(n, "fk.probes must be a non-empty list");
      c.fk.probes.clear();
      for (const auto& e : n) c.fk.probes.push_back(read_point(e));
    }
    if (c.fk.quadrature < 1) fail(f, "fk.quadrature must be positive");
    if (c.fk.halvings < 1) fail(f, "fk.halvings must be positive");
    if (!(c.fk.q >= 1.0) || std::isinf(c.fk.q)) fail(f, "fk.q must be finite and >= 1");
  }

  if (const auto g = root["fgt"]) {
    check_keys(g, {"order", "q1", "q2", "r", "c", "theta", "T0"}, "fgt");
    maybe(g, "order", c.fgt.order, "fgt");
    maybe(g, "q1", c.fgt.q1, "fgt");
    maybe(g, "q2", c.fgt.q2, "fgt");
    maybe(g, "theta", c.fgt.theta, "fgt");
    maybe(g, "T0", c.fgt.T0, "fgt");
    if (const auto n = g["r"]) c.fgt.r = read_list(n, "fgt.r");
    if (const auto n = g["c"]) c.fgt.c = read_list(n, "fgt.c");
    if (!(c.fgt.q1 > 3.0) || !(c.fgt.q1 <= c.fgt.q2)) fail(g, "fgt needs 3 < q1 <= q2");
    if (c.fgt.order < 0 || c.fgt.order > 4) fail(g, "fgt.order must lie in [0, 4]");
    if (!(c.fgt.T0 > 0.0)) fail(g, "fgt.T0 must be positive");
    if (c.fgt.r.empty() || c.fgt.c.empty()) fail(g, "fgt.r and fgt.c must be non-empty");
    try {
      (void)theta_from_string(c.fgt.theta);
    } catch (const std::invalid_argument& e) {
      fail(g, e.what());
    }
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_config(ss.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::string emit_config(const RunConfig& c) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "scenario" << YAML::Value << c.scenario;
  out << YAML::Key << "seed" << YAML::Value << c.seed;
  out << YAML::Key << "output" << YAML::Value << c.output;

  out << YAML::Key << "solver" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "n" << YAML::Value << c.solver.n;
  out << YAML::Key << "dt" << YAML::Value << fmt(c.solver.dt);
  out << YAML::Key << "viscosity" << YAML::Value << fmt(c.solver.viscosity);
  out << YAML::Key << "dealias" << YAML::Value << c.solver.dealias;
  out << YAML::Key << "snapshot_interval" << YAML::Value << fmt(c.solver.snapshot_interval);
  out << YAML::Key << "end_time" << YAML::Value << fmt(c.solver.end_time);
  out << YAML::EndMap;

  out << YAML::Key << "sde" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "particles" << YAML::Value << c.sde.particles;
  out << YAML::Key << "step" << YAML::Value << fmt(c.sde.step);
  out << YAML::Key << "interpolation" << YAML::Value << to_string(c.sde.interpolation);
  out << YAML::EndMap;

  out << YAML::Key << "diagnostics" << YAML::Value << YAML::BeginSeq;
  for (const auto& r : c.diagnostics) {
    out << YAML::BeginMap;
    out << YAML::Key << "kind" << YAML::Value << r.kind;
    if (r.p) out << YAML::Key << "p" << YAML::Value << fmt(*r.p);
    if (r.q) out << YAML::Key << "q" << YAML::Value << fmt(*r.q);
    if (r.order) out << YAML::Key << "order" << YAML::Value << *r.order;
    if (r.theta) out << YAML::Key << "theta" << YAML::Value << *r.theta;
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;

  out << YAML::Key << "fk" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "checks" << YAML::Value << YAML::Flow << c.fk.checks;
  out << YAML::Key << "T0" << YAML::Value << fmt(c.fk.T0);
  out << YAML::Key << "t" << YAML::Value << fmt(c.fk.t);
  out << YAML::Key << "probes" << YAML::Value << YAML::BeginSeq;
  for (const auto& x : c.fk.probes)
    out << YAML::Flow << YAML::BeginSeq << fmt(x[0]) << fmt(x[1]) << fmt(x[2]) << YAML::EndSeq;
  out << YAML::EndSeq;
  out << YAML::Key << "q" << YAML::Value << fmt(c.fk.q);
  out << YAML::Key << "quadrature" << YAML::Value << c.fk.quadrature;
  out << YAML::Key << "halvings" << YAML::Value << c.fk.halvings;
  out << YAML::EndMap;

  out << YAML::Key << "fgt" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "order" << YAML::Value << c.fgt.order;
  out << YAML::Key << "q1" << YAML::Value << fmt(c.fgt.q1);
  out << YAML::Key << "q2" << YAML::Value << fmt(c.fgt.q2);
  out << YAML::Key << "r" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (double r : c.fgt.r) out << fmt(r);
  out << YAML::EndSeq;
  out << YAML::Key << "c" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (double v : c.fgt.c) out << fmt(v);
  out << YAML::EndSeq;
  out << YAML::Key << "theta" << YAML::Value << c.fgt.theta;
  out << YAML::Key << "T0" << YAML::Value << fmt(c.fgt.T0);
  out << YAML::EndMap;

  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace nsreg::cli
