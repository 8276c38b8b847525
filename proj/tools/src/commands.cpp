#include "nsreg/cli/commands.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "nsreg/diagnostics/corollary.hpp"
#include "nsreg/diagnostics/criteria.hpp"
#include "nsreg/diagnostics/level_sets.hpp"
#include "nsreg/fields/snapshot_io.hpp"
#include "nsreg/fields/spectral.hpp"
#include "nsreg/norms/norms.hpp"
#include "nsreg/solver/passive.hpp"
#include "nsreg/solver/scenarios.hpp"
#include "nsreg/stochastic/feynman_kac.hpp"
#include "nsreg/stochastic/ntilde.hpp"

namespace nsreg::cli {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

/// Refuses to replace existing outputs unless forced.
bool guard_outputs(const fs::path& dir, std::initializer_list<const char*> files, bool force,
                   std::ostream& err) {
  if (force) return true;
  for (const char* f : files) {
    if (fs::exists(dir / f)) {
      err << "error: " << (dir / f).string() << " exists; pass --force to overwrite\n";
      return false;
    }
  }
  return true;
}

RunConfig resolved_config(const CommandOptions& opts) {
  RunConfig c = opts.config.empty() ? RunConfig{} : load_config(opts.config);
  if (opts.seed) {
    c.seed = *opts.seed;
    c.sde.seed = *opts.seed;
  }
  return c;
}

fs::path output_dir(const CommandOptions& opts, const RunConfig& c) {
  return opts.out ? *opts.out : fs::path(c.output);
}

fs::path manifest_path(const CommandOptions& opts, const RunConfig& c) {
  return opts.manifest ? *opts.manifest : output_dir(opts, c) / "manifest.json";
}

fs::path derived_dir(const CommandOptions& opts, const fs::path& manifest) {
  if (opts.out) return *opts.out;
  const auto parent = manifest.parent_path();
  return parent.empty() ? fs::path(".") : parent;
}

Json vec_json(const Vec3& x) { return Json::array({x[0], x[1], x[2]}); }

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
  } catch (const MissingFile& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitUsage;
}

}  // namespace

VelocityHistory load_history(const fs::path& manifest) {
  std::ifstream in(manifest);
  if (!in) throw MissingFile("missing manifest " + manifest.string());
  Json m;
  try {
    in >> m;
  } catch (const Json::exception& e) {
    throw std::runtime_error("malformed manifest " + manifest.string() + ": " + e.what());
  }
  VelocityHistory h(m.at("viscosity").get<double>());
  const fs::path base = manifest.parent_path();
  for (const auto& entry : m.at("snapshots")) {
    const fs::path file = base / entry.at("file").get<std::string>();
    if (!fs::exists(file)) throw MissingFile("missing snapshot file " + file.string());
    double t = 0.0;
    VectorField u = read_vector_snapshot(file, &t);
    u.mark_solenoidal();
    h.append(entry.at("time").get<double>(), std::move(u));
  }
  if (h.empty()) throw std::runtime_error("manifest " + manifest.string() + " lists no snapshots");
  return h;
}

int cmd_simulate(const CommandOptions& opts, std::ostream& log, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig c = resolved_config(opts);
    const fs::path dir = output_dir(opts, c);
    if (!guard_outputs(dir, {"manifest.json", "energy.csv", "blowup.json"}, opts.force, err))
      return kExitUsage;
    fs::create_directories(dir / "snapshots");
    fs::remove(dir / "blowup.json");
    write_text(dir / "config.yaml", emit_config(c));

    const PeriodicGrid grid(c.solver.n);
    const VectorField u0 = initial_condition(scenario_from_string(c.scenario), grid, c.seed);
    const SolveResult res = run(c.solver, u0);

    Json manifest;
    manifest["format"] = "nsreg-manifest";
    manifest["version"] = 1;
    manifest["scenario"] = c.scenario;
    manifest["seed"] = c.seed;
    manifest["grid"] = c.solver.n;
    manifest["viscosity"] = c.solver.viscosity;
    manifest["dt"] = c.solver.dt;
    manifest["snapshots"] = Json::array();
    std::string energy = "time,energy\n";
    for (std::size_t i = 0; i < res.history.size(); ++i) {
      const auto& s = res.history[i];
      char name[32];
      std::snprintf(name, sizeof name, "u_%05zu.bin", i);
      const fs::path rel = fs::path("snapshots") / name;
      write_snapshot(dir / rel, "u", s.time, s.u);
      manifest["snapshots"].push_back({{"time", s.time}, {"file", rel.generic_string()}});
      const double e = 0.5 * inner_product(s.u, s.u);
      energy += num(s.time) + "," + num(e) + "\n";
    }
    manifest["complete"] = !res.blowup_time.has_value();
    write_text(dir / "energy.csv", energy);
    write_text(dir / "manifest.json", manifest.dump(2) + "\n");
    log << "wrote " << res.history.size() << " snapshots to " << dir.string() << "\n";
    if (res.blowup_time) {
      Json note{{"blowup_time", *res.blowup_time},
                {"last_valid_time", res.last_valid_time},
                {"snapshots_written", res.history.size()}};
      write_text(dir / "blowup.json", note.dump(2) + "\n");
      err << "blow-up detected at t = " << num(*res.blowup_time) << "\n";
      return kExitBlowup;
    }
    return kExitOk;
  });
}

namespace {

struct SeriesBook {
  const VelocityHistory& history;
  std::map<std::string, DiagnosticSeries> cache;
  std::vector<std::string> order;

  const DiagnosticSeries& get(const FunctionalSpec& spec) {
    const auto label = spec.label();
    auto it = cache.find(label);
    if (it == cache.end()) {
      it = cache.emplace(label, series(history, spec)).first;
      order.push_back(label);
    }
    return it->second;
  }
};

Json params_json(const DiagnosticRequest& r) {
  Json p = Json::object();
  if (r.p) p["p"] = *r.p;
  if (r.q) p["q"] = *r.q;
  if (r.order) p["order"] = *r.order;
  if (r.theta) p["theta"] = *r.theta;
  return p;
}

}  // namespace

int cmd_diagnose(const CommandOptions& opts, std::ostream& log, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig c = resolved_config(opts);
    const fs::path manifest = manifest_path(opts, c);
    const VelocityHistory history = load_history(manifest);
    const fs::path dir = derived_dir(opts, manifest);
    if (!guard_outputs(dir, {"series.csv", "summary.json"}, opts.force, err)) return kExitUsage;
    fs::create_directories(dir);

    SeriesBook book{history, {}, {}};
    Json results = Json::array();
    for (const auto& r : c.diagnostics) {
      Json item{{"kind", r.kind}, {"params", params_json(r)}};
      if (r.kind == "prodi_serrin_log") {
        const auto& s = book.get({FunctionalKind::kVelocityLq, *r.q, 0});
        item["series"] = s.name;
        item["value"] = prodi_serrin_log(s, *r.p, *r.q);
      } else if (r.kind == "theta") {
        const auto& s = book.get({FunctionalKind::kVelocityLq, *r.q, 0});
        item["series"] = s.name;
        item["value"] = theta_criterion(s, theta_from_string(*r.theta), *r.p, *r.q);
      } else if (r.kind == "bkm") {
        const auto& s = book.get({FunctionalKind::kVorticityLq, std::numeric_limits<double>::infinity(), 0});
        item["series"] = s.name;
        item["value"] = bkm_integral(s);
      } else if (r.kind == "orlicz") {
        const auto& s = book.get({FunctionalKind::kGradientOrlicz, *r.q, 0});
        item["series"] = s.name;
        item["value"] = orlicz_integral(s);
      } else if (r.kind == "riccati") {
        const auto& s = book.get({FunctionalKind::kVelocityLq, *r.q, 0});
        const auto fit = riccati_envelope(s, *r.p);
        item["series"] = s.name;
        item["value"] = fit.c;
        item["infinite"] = fit.infinite;
        item["finite_difference_c"] = fit.finite_difference_c;
      } else if (r.kind == "velocity_lq") {
        const auto& s = book.get({FunctionalKind::kVelocityLq, *r.q, 0});
        item["series"] = s.name;
        item["value"] = trapezoid(s);
      } else if (r.kind == "derivative_lq") {
        const auto& s = book.get({FunctionalKind::kDerivativeLq, *r.q, *r.order});
        item["series"] = s.name;
        item["value"] = trapezoid(s);
      } else if (r.kind == "fgt_integral") {
        const auto& s = book.get({FunctionalKind::kDerivativeLq, 2.0, *r.order});
        item["series"] = s.name;
        item["value"] = fgt_integral(s, *r.order);
      }
      results.push_back(std::move(item));
    }

    std::string csv = "time";
    for (const auto& label : book.order) csv += "," + label;
    csv += "\n";
    if (!book.order.empty()) {
      for (std::size_t i = 0; i < history.size(); ++i) {
        csv += num(history[i].time);
        for (const auto& label : book.order) csv += "," + num(book.cache.at(label).values[i]);
        csv += "\n";
      }
    }
    write_text(dir / "series.csv", csv);
    Json summary{{"manifest", manifest.filename().string()},
                 {"snapshots", history.size()},
                 {"diagnostics", results}};
    write_text(dir / "summary.json", summary.dump(2) + "\n");
    log << "wrote " << results.size() << " diagnostics to " << dir.string() << "\n";
    return kExitOk;
  });
}

namespace {

ScalarField test_scalar(const PeriodicGrid& g) {
  return ScalarField::from_function(
      g, [](const Vec3& x) { return 2.0 + std::sin(x[0]) + 0.5 * std::cos(x[1] + x[2]); });
}

double oracle_at(const ScalarField& f, const Vec3& x) { return evaluate_spectral(forward(f), x); }

Vec3 oracle_at(const VectorField& v, const Vec3& x) {
  return {oracle_at(v[0], x), oracle_at(v[1], x), oracle_at(v[2], x)};
}

bool within_se(const std::vector<double>& mean, const std::vector<double>& se,
               const std::vector<double>& oracle, double k) {
  for (std::size_t i = 0; i < mean.size(); ++i) {
    const double err = std::abs(mean[i] - oracle[i]);
    const double tol = se[i] > 0.0 ? k * se[i] : 1e-10 * std::max(1.0, std::abs(oracle[i]));
    if (err > tol) return false;
  }
  return true;
}

Json estimate_json(const char* op, const FKEstimate& e) {
  Json j;
  j["op"] = op;
  j["x"] = vec_json(e.x);
  j["t0"] = e.t0;
  j["t1"] = e.t1;
  j["N"] = e.particles;
  j["h"] = e.step;
  j["seed"] = e.seed;
  j["mean"] = e.mean;
  j["stderr"] = e.std_error;
  Json cert = Json::object();
  if (e.gronwall) {
    cert["gronwall_pass_rate"] = e.gronwall->pass_rate();
    cert["gronwall_max_ratio"] = e.gronwall->max_ratio;
    cert["gronwall_slack"] = e.gronwall->slack;
  }
  j["certificates"] = cert;
  return j;
}

}  // namespace

int cmd_fk_verify(const CommandOptions& opts, std::ostream& log, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig c = resolved_config(opts);
    const fs::path manifest = manifest_path(opts, c);
    const VelocityHistory history = load_history(manifest);
    const fs::path dir = derived_dir(opts, manifest);
    if (!guard_outputs(dir, {"fk.jsonl", "fk_summary.json"}, opts.force, err)) return kExitUsage;
    fs::create_directories(dir);

    const SDEConfig& sde = c.sde;
    sde.validate(history);
    const double T0 = c.fk.T0;
    const double t = c.fk.t < 0.0 ? history.end_time() : c.fk.t;
    if (!(T0 <= t) || !history.covers(T0, t))
      throw ConfigError("fk interval [" + num(T0) + ", " + num(t) + "] outside the history");
    const PeriodicGrid& g = history.grid();
    const double dt = c.solver.dt;

    std::string jsonl;
    Json summary = Json::array();
    auto emit = [&](Json rec) { jsonl += rec.dump() + "\n"; };

    for (const auto& check : c.fk.checks) {
      bool passed = true;
      Json detail = Json::object();
      if (check == "scalar_oracle") {
        const ScalarField f = test_scalar(g);
        const ScalarField target = solve_transport(history, f, T0, t, dt, c.solver.dealias).final();
        for (std::size_t i = 0; i < c.fk.probes.size(); ++i) {
          const auto& x = c.fk.probes[i];
          const auto est = feynman_kac_scalar(history, f, T0, t, x, sde, static_cast<std::uint32_t>(i));
          const double o = oracle_at(target, x);
          const bool ok = within_se(est.mean, est.std_error, {o}, 3.0);
          auto rec = estimate_json("scalar_oracle", est);
          rec["oracle"] = {o};
          rec["pass"] = ok;
          emit(rec);
          passed = passed && ok;
        }
      } else if (check == "magnetization_oracle" || check == "vorticity_oracle") {
        const bool mag = check == "magnetization_oracle";
        const VectorField u0 = history.velocity_at(T0);
        const VectorField f0 = mag ? u0 : curl(u0);
        const VectorField target =
            mag ? solve_magnetization(history, f0, T0, t, dt, c.solver.dealias).final()
                : solve_vorticity(history, f0, T0, t, dt, c.solver.dealias).final();
        for (std::size_t i = 0; i < c.fk.probes.size(); ++i) {
          const auto& x = c.fk.probes[i];
          const auto stream = static_cast<std::uint32_t>(i);
          const auto est = mag ? feynman_kac_magnetization(history, f0, T0, t, x, sde, stream)
                               : feynman_kac_vorticity(history, f0, T0, t, x, sde, stream);
          const Vec3 o = oracle_at(target, x);
          const bool ok = within_se(est.mean, est.std_error, {o[0], o[1], o[2]}, 3.0);
          auto rec = estimate_json(check.c_str(), est);
          rec["oracle"] = vec_json(o);
          rec["pass"] = ok;
          emit(rec);
          passed = passed && ok;
        }
      } else if (check == "gronwall") {
        const VectorField u0 = history.velocity_at(T0);
        const auto pair = feynman_kac_stretching(history, u0, curl(u0), T0, t, c.fk.probes.front(), sde);
        for (const auto* est : {&pair.magnetization, &pair.vorticity}) {
          auto rec = estimate_json(est == &pair.magnetization ? "gronwall_magnetization"
                                                              : "gronwall_vorticity",
                                   *est);
          const double rate = est->gronwall->pass_rate();
          rec["pass"] = rate == 1.0;
          emit(rec);
          passed = passed && rate == 1.0;
          detail[est == &pair.magnetization ? "magnetization_pass_rate" : "vorticity_pass_rate"] = rate;
        }
      } else if (check == "measure_preservation") {
        const ScalarField f = test_scalar(g);
        const auto rep = measure_preservation_check(history, f, T0, t, sde, c.fk.quadrature);
        passed = rep.within(3.0);
        Json rec{{"op", "measure_preservation"}, {"t0", T0}, {"t1", t},
                 {"N", sde.particles}, {"h", sde.step}, {"seed", sde.seed},
                 {"quadrature_points", rep.quadrature_points}, {"integral_f", rep.integral_f},
                 {"integral_estimate", rep.integral_estimate}, {"discrepancy", rep.discrepancy},
                 {"relative_discrepancy", rep.relative_discrepancy},
                 {"pooled_stderr", rep.pooled_std_error}, {"pass", passed}};
        emit(rec);
      } else if (check == "composition") {
        const double hmax = sde.step * std::ldexp(1.0, c.fk.halvings);
        const double fine = sde.step / 3.0;
        const long span = std::lround(std::floor((t - T0) / hmax));
        const long m = std::max(1L, (span - 1) / 2);
        const long third = std::lround(hmax / fine) / 3;
        const double t2 = t;
        const double t1 = t2 - fine * static_cast<double>(m * 3L * (1L << c.fk.halvings) + third);
        const double t0 = t1 - hmax * static_cast<double>(m);
        if (t0 < T0) throw ConfigError("fk interval too short for the composition check");
        std::vector<double> steps;
        for (int k = c.fk.halvings; k >= 0; --k) steps.push_back(sde.step * std::ldexp(1.0, k));
        const auto rep = composition_check(history, c.fk.probes.front(), t0, t1, t2, steps, fine, sde);
        passed = rep.ratios_within(1.7, 2.3);
        Json rec{{"op", "composition"}, {"x", vec_json(c.fk.probes.front())},
                 {"t0", t0}, {"t1", t1}, {"t2", t2}, {"N", sde.particles}, {"seed", sde.seed},
                 {"steps", rep.steps}, {"max_discrepancy", rep.max_discrepancy},
                 {"rms_discrepancy", rep.rms_discrepancy}, {"ratios", rep.ratios},
                 {"pass", passed}};
        emit(rec);
      } else if (check == "ntilde") {
        const TimeSet window({{T0, t}});
        const auto rep = ntilde_estimate(history, window, T0, t, sde, c.fk.q, c.fk.quadrature);
        passed = rep.bound_holds;
        Json rec{{"op", "ntilde"}, {"t0", T0}, {"t1", t}, {"N", sde.particles},
                 {"h", sde.step}, {"seed", sde.seed}, {"q", rep.q}, {"ntilde", rep.ntilde},
                 {"ntilde_q", rep.ntilde_q}, {"stderr_q", rep.std_error_q},
                 {"relative_stderr", rep.relative_std_error},
                 {"hypothesis_integral", rep.hypothesis_integral},
                 {"hypothesis_holds", rep.hypothesis_holds}, {"pass", passed}};
        emit(rec);
      }
      Json entry{{"check", check}, {"passed", passed}};
      if (!detail.empty()) entry["detail"] = detail;
      summary.push_back(entry);
      log << check << ": " << (passed ? "pass" : "FAIL") << "\n";
    }

    bool all = true;
    for (const auto& s : summary) all = all && s["passed"].get<bool>();
    write_text(dir / "fk.jsonl", jsonl);
    Json doc{{"manifest", manifest.filename().string()}, {"checks", summary}, {"all_passed", all}};
    write_text(dir / "fk_summary.json", doc.dump(2) + "\n");
    return kExitOk;
  });
}

int cmd_norms(const CommandOptions& opts, std::ostream& log, std::ostream& err) {
  return guarded(err, [&] {
    if (!fs::exists(opts.snapshot)) throw MissingFile("missing snapshot file " + opts.snapshot.string());
    double time = 0.0;
    VectorField u = read_vector_snapshot(opts.snapshot, &time);
    const TensorField grad = grad_tensor(u);
    Json j;
    j["file"] = opts.snapshot.filename().string();
    j["time"] = time;
    j["grid"] = u.grid().n();
    Json lq = Json::object();
    Json glq = Json::object();
    for (double q : opts.q) {
      lq[num(q)] = lp_norm(u, q);
      glq[num(q)] = lp_norm(grad, q);
    }
    j["velocity_lq"] = lq;
    j["gradient_lq"] = glq;
    Json orl = Json::object();
    for (double q : opts.q) {
      if (!(q > 1.0) || std::isinf(q)) continue;
      OrliczSpec s;
      s.q = q;
      orl[num(q)] = orlicz_norm(grad, s);
    }
    j["gradient_orlicz"] = orl;
    j["vorticity_linf"] = lp_norm(curl(u), std::numeric_limits<double>::infinity());
    log << j.dump(2) << "\n";
    return kExitOk;
  });
}

int cmd_fgt_report(const CommandOptions& opts, std::ostream& log, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig c = resolved_config(opts);
    const fs::path manifest = manifest_path(opts, c);
    const VelocityHistory history = load_history(manifest);
    const fs::path dir = derived_dir(opts, manifest);
    if (!guard_outputs(dir, {"fgt_report.json"}, opts.force, err)) return kExitUsage;
    fs::create_directories(dir);
    const auto& f = c.fgt;
    const auto rep = fgt_ratio_report(history, f.order, f.q1, f.q2, f.r, f.c);

    Json lr;
    lr["order"] = rep.order;
    lr["q1"] = rep.q1;
    lr["q2"] = rep.q2;
    lr["T1"] = rep.T1;
    lr["T2"] = rep.T2;
    lr["r"] = rep.r_grid;
    lr["c"] = rep.c_grid;
    lr["lambda_left"] = rep.lambda_left;
    lr["lambda_right"] = rep.lambda_right;
    lr["left_measure"] = rep.left_measure;
    lr["right_measure"] = rep.right_measure;
    lr["c1"] = rep.c1;
    lr["c3"] = rep.c3;
    lr["c2"] = rep.c2;
    lr["c2_of_r"] = rep.c2_of_r;
    lr["median_c2"] = rep.median_c2();
    lr["bounded"] = rep.bounded();
    lr["degenerate"] = rep.degenerate;

    const auto theta = theta_from_string(f.theta);
    const double T1 = history.end_time();
    const auto leb = corollary_check(history, theta, f.order, f.q1, f.q2, f.T0, T1, f.c,
                                     CorollaryVariant::kLebesgue);
    const int n2 = std::max(1, f.order);
    const auto l2 = corollary_check(history, theta, n2, f.q1, f.q2, f.T0, T1, f.c,
                                    CorollaryVariant::kL2);
    auto cor_json = [](const CorollaryReport& r) {
      return Json{{"order", r.order}, {"T0", r.T0}, {"T1", r.T1}, {"lhs", r.lhs},
                  {"c", r.c_grid}, {"kappa", r.kappa}, {"rhs", r.rhs},
                  {"constant", r.constant}, {"finite", r.finite()}};
    };
    const auto fgt_series = series(history, {FunctionalKind::kDerivativeLq, 2.0, n2});
    Json doc{{"level_sets", lr},
             {"corollary", cor_json(leb)},
             {"corollary_l2", cor_json(l2)},
             {"fgt_integral", {{"order", n2}, {"value", fgt_integral(fgt_series, n2)}}}};
    write_text(dir / "fgt_report.json", doc.dump(2) + "\n");
    log << "wrote " << (dir / "fgt_report.json").string() << "\n";
    return kExitOk;
  });
}

}  // namespace nsreg::cli
