// Acceptance checks. Usage: acceptance [criterion ...]; no arguments runs all twelve.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "nsreg/diagnostics/corollary.hpp"
#include "nsreg/diagnostics/criteria.hpp"
#include "nsreg/diagnostics/level_sets.hpp"
#include "nsreg/diagnostics/series.hpp"
#include "nsreg/fields/interpolate.hpp"
#include "nsreg/fields/random_fields.hpp"
#include "nsreg/fields/spectral.hpp"
#include "nsreg/norms/norms.hpp"
#include "nsreg/solver/navier_stokes.hpp"
#include "nsreg/solver/passive.hpp"
#include "nsreg/solver/scenarios.hpp"
#include "nsreg/stochastic/feynman_kac.hpp"
#include "nsreg/stochastic/ntilde.hpp"

namespace fs = std::filesystem;
using namespace nsreg;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double max_abs_diff(const VectorField& a, const VectorField& b) {
  double m = 0.0;
  for (int c = 0; c < 3; ++c)
    for (std::size_t p = 0; p < a[c].size(); ++p) m = std::max(m, std::abs(a[c][p] - b[c][p]));
  return m;
}

double max_abs_diff(const ScalarField& a, const ScalarField& b) {
  double m = 0.0;
  for (std::size_t p = 0; p < a.size(); ++p) m = std::max(m, std::abs(a[p] - b[p]));
  return m;
}

SolverConfig solver(int n, double dt, double end, double every) {
  SolverConfig c;
  c.n = n;
  c.dt = dt;
  c.end_time = end;
  c.snapshot_interval = every;
  return c;
}

SDEConfig sde(std::size_t particles, double step = 1e-3) {
  SDEConfig c;
  c.particles = particles;
  c.step = step;
  c.seed = 1;
  return c;
}

// Deterministic probe points from a fixed 64-bit LCG.
std::vector<Vec3> probes(std::size_t count, std::uint64_t state) {
  std::vector<Vec3> out;
  const auto next = [&state] {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<double>(state >> 11) * 0x1.0p-53 * kTwoPi;
  };
  for (std::size_t k = 0; k < count; ++k) out.push_back({next(), next(), next()});
  return out;
}

struct SigmaTally {
  int checked = 0;
  int failed = 0;
  double worst = 0.0;

  void add(double mean, double oracle, double se) {
    const double d = std::abs(mean - oracle);
    ++checked;
    if (se > 0.0) worst = std::max(worst, d / se);
    if (d > 3.0 * se + 1e-12 * std::max(1.0, std::abs(oracle))) ++failed;
  }
};

VelocityHistory every_other(const VelocityHistory& h) {
  VelocityHistory out(h.viscosity());
  for (std::size_t k = 0; k < h.size(); k += 2) out.append(h[k].time, h[k].u, h[k].grad);
  return out;
}

// 1
Outcome shear_exact() {
  const auto start = std::chrono::steady_clock::now();
  const PeriodicGrid g(32);
  const auto res = run(solver(32, 1e-3, 1.0, 0.1), shear_flow(g));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  double worst = 0.0;
  for (const auto& s : res.history) {
    VectorField e = shear_flow(g);
    e *= std::exp(-s.time);
    worst = std::max(worst, max_abs_diff(s.u, e) / e.max_abs());
  }
  const bool ok = worst <= 1e-6 && secs <= 60.0 && res.history.size() == 11 && !res.blowup_time;
  return {ok, fmt("n=32 dt=1e-3 T=1, max relative error %.3e, solve %.1f s", worst, secs)};
}

// 2
Outcome spectral_identities() {
  const PeriodicGrid g(32);
  double leray = 0.0, curl_grad = 0.0, div_curl = 0.0, heat = 0.0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const VectorField v = random_smooth_vector(g, 10 + s);
    const VectorField pv = leray_project(v);
    leray = std::max(leray, max_abs_diff(leray_project(pv), pv) / pv.max_abs());
    const ScalarField f = random_smooth_scalar(g, 500 + s);
    const VectorField gf = gradient(f);
    curl_grad = std::max(curl_grad, curl(gf).max_abs() / gf.max_abs());
    const VectorField cv = curl(v);
    div_curl = std::max(div_curl, divergence(cv).max_abs() / cv.max_abs());
    const ScalarField two = heat_semigroup(heat_semigroup(f, 0.03), 0.05);
    const ScalarField one = heat_semigroup(f, 0.08);
    heat = std::max(heat, max_abs_diff(two, one) / one.max_abs());
  }
  const double worst = std::max({leray, curl_grad, div_curl, heat});
  return {worst <= 1e-12, fmt("100 fields n=32: Leray %.1e, curl grad %.1e, div curl %.1e, heat %.1e",
                              leray, curl_grad, div_curl, heat)};
}

// 3
Outcome orlicz_suite() {
  Outcome o;
  const PeriodicGrid g(32);
  const double cell = g.cell_volume();
  double closed = 0.0;
  for (double m : {0.1, 1.0, 10.0}) {
    const auto cells = static_cast<std::size_t>(std::llround(m / cell));
    const double measure = static_cast<double>(cells) * cell;
    ScalarField f(g);
    for (std::size_t p = 0; p < cells; ++p) f[p] = 1.0;
    for (double q : {1.5, 2.0, 4.0}) {
      OrliczSpec spec;
      spec.q = q;
      const double want = 1.0 / std::log(1.0 + (std::numbers::e - 1.0) * std::pow(measure, -1.0 / q));
      closed = std::max(closed, std::abs(orlicz_norm(f, spec) - want));
    }
  }
  const PeriodicGrid small(16);
  int lemma_fail = 0;
  double lemma_ratio = 0.0;
  OrliczSpec spec;
  for (std::uint64_t s = 0; s < 1000; ++s) {
    spec.q = s % 3 == 0 ? 1.5 : (s % 3 == 1 ? 2.0 : 4.0);
    const auto c = check_lemma_bound(random_smooth_scalar(small, 7000 + s), spec);
    if (!c.holds()) ++lemma_fail;
    lemma_ratio = std::max(lemma_ratio, c.orlicz / c.bound);
  }
  int triangle_fail = 0;
  double homog = 0.0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    spec.q = s % 2 == 0 ? 2.0 : 4.0;
    const ScalarField a = random_smooth_scalar(small, 9000 + 2 * s);
    const ScalarField b = random_smooth_scalar(small, 9001 + 2 * s);
    ScalarField sum = a;
    sum += b;
    if (orlicz_norm(sum, spec) > orlicz_norm(a, spec) + orlicz_norm(b, spec) + 1e-8) ++triangle_fail;
    const double k = 0.1 + 0.05 * static_cast<double>(s);
    ScalarField ka = a;
    ka *= -k;
    homog = std::max(homog, std::abs(orlicz_norm(ka, spec) / (k * orlicz_norm(a, spec)) - 1.0));
  }
  o.pass = closed <= 1e-8 && lemma_fail == 0 && triangle_fail == 0 && homog <= 1e-8;
  o.detail = fmt("indicator closed form max err %.1e; bound holds %d/1000 (max norm/bound %.3f); "
                 "triangle failures %d/200; homogeneity rel err %.1e",
                 closed, 1000 - lemma_fail, lemma_ratio, triangle_fail, homog);
  return o;
}

// 4
Outcome fk_scalar_heat() {
  const PeriodicGrid g(32);
  VectorField zero(g);
  zero.mark_solenoidal();
  const auto h = VelocityHistory::frozen(zero, 0.0, 0.2);
  const auto f = ScalarField::from_function(g, [](const Vec3& x) {
    return 2.0 + std::sin(x[0]) + 0.5 * std::cos(x[1] + x[2]) + 0.25 * std::sin(2.0 * x[2]);
  });
  const SpectralField oracle = forward(heat_semigroup(f, 0.2));
  SigmaTally tally;
  for (const Vec3& x : probes(20, 4)) {
    const auto est = feynman_kac_scalar(h, f, 0.0, 0.2, x, sde(100000));
    tally.add(est.mean[0], evaluate_spectral(oracle, x), est.std_error[0]);
  }
  return {tally.failed == 0, fmt("u=0, N=1e5, h=1e-3, t=0.2: %d/%d probes within 3 SE (worst %.2f SE)",
                                 tally.checked - tally.failed, tally.checked, tally.worst)};
}

// 5
Outcome magnetization_identity() {
  Outcome o;
  std::string detail;
  for (const char* name : {"shear", "taylor-green"}) {
    const PeriodicGrid g(32);
    const auto u0 = initial_condition(scenario_from_string(name), g);
    const auto h = run(solver(32, 1e-3, 0.5, 0.01), u0).history;

    const auto full = solve_magnetization(h, h[0].u, 0.0, 0.5, 1e-3);
    double leray = 0.0;
    for (const auto& s : h) leray = std::max(leray, max_abs_diff(leray_project(full.at(s.time)), s.u) / s.u.max_abs());

    const double T0 = 0.3, t = 0.5;
    const VectorField m0 = h.velocity_at(T0);
    const VectorField w0 = curl(m0);
    const auto m = solve_magnetization(h, m0, T0, t, 1e-3).final();
    const auto w = solve_vorticity(h, w0, T0, t, 1e-3).final();
    std::array<SpectralField, 3> ms{forward(m[0]), forward(m[1]), forward(m[2])};
    std::array<SpectralField, 3> ws{forward(w[0]), forward(w[1]), forward(w[2])};
    SigmaTally tm, tw;
    for (const Vec3& x : probes(10, 5)) {
      const auto est = feynman_kac_stretching(h, m0, w0, T0, t, x, sde(100000));
      for (int c = 0; c < 3; ++c) {
        tm.add(est.magnetization.mean[c], evaluate_spectral(ms[c], x), est.magnetization.std_error[c]);
        tw.add(est.vorticity.mean[c], evaluate_spectral(ws[c], x), est.vorticity.std_error[c]);
      }
    }
    o.pass = o.pass && tm.failed == 0 && tw.failed == 0 && leray <= 1e-4;
    detail += fmt("%s%s: m %d/%d (worst %.2f SE), w %d/%d (worst %.2f SE), Leray(m)=u rel err %.1e",
                  detail.empty() ? "" : "; ", name, tm.checked - tm.failed, tm.checked, tm.worst,
                  tw.checked - tw.failed, tw.checked, tw.worst, leray);
  }
  o.detail = "N=1e5, 10 probes, [0.3, 0.5]: " + detail;
  return o;
}

// 6
Outcome gronwall() {
  std::size_t paths = 0, passed = 0;
  double worst = 0.0;
  for (const char* name : {"shear", "taylor-green", "random-solenoidal"}) {
    const PeriodicGrid g(16);
    const auto h = run(solver(16, 1e-3, 0.3, 0.01), initial_condition(scenario_from_string(name), g, 3)).history;
    for (const Vec3& x : probes(5, 6)) {
      const auto est = feynman_kac_stretching(h, h[0].u, curl(h[0].u), 0.0, 0.3, x, sde(10000));
      for (const auto* e : {&est.magnetization, &est.vorticity}) {
        paths += e->gronwall->paths;
        passed += e->gronwall->passed;
        worst = std::max(worst, e->gronwall->max_ratio);
      }
    }
  }
  return {passed == paths, fmt("%zu/%zu paths within exp(int |grad u|) |M(T0)| (1+10h); "
                               "largest ratio to the exponential bound %.4f",
                               passed, paths, worst)};
}

// 7
Outcome measure_preservation() {
  const PeriodicGrid g(32);
  const auto h = run(solver(32, 1e-3, 0.5, 0.01), taylor_green(g)).history;
  const auto f = ScalarField::from_function(g, [](const Vec3& x) {
    return 1.0 + 0.5 * std::sin(x[0] + x[1]) + 0.3 * std::cos(x[2]);
  });
  const auto r = measure_preservation_check(h, f, 0.48, 0.5, sde(10000), 16);
  return {r.within(3.0), fmt("Taylor-Green [0.48, 0.5], N=1e4 per point, 16^3 points: int f %.6f, "
                             "estimate %.6f, discrepancy %.2e = %.2f pooled SE",
                             r.integral_f, r.integral_estimate, r.discrepancy,
                             r.discrepancy / r.pooled_std_error)};
}

// 8
Outcome composition() {
  const PeriodicGrid g(32);
  const auto h = run(solver(32, 1e-3, 0.5, 0.01), taylor_green(g)).history;
  const double hmax = 0.024;
  const double t2 = 0.5, t1 = t2 - (4.0 * hmax + hmax / 3.0), t0 = 0.2;
  const std::vector<double> steps{hmax, hmax / 2, hmax / 4, hmax / 8};
  Outcome o;
  std::string detail;
  for (const Vec3& x : probes(3, 8)) {
    const auto r = composition_check(h, x, t0, t1, t2, steps, hmax / 24.0, sde(10000));
    o.pass = o.pass && r.ratios_within(1.7, 2.3);
    detail += detail.empty() ? "" : "; ";
    detail += fmt("ratios %.3f %.3f %.3f", r.ratios[0], r.ratios[1], r.ratios[2]);
  }
  o.detail = "Taylor-Green, h = 0.024 / 2^k, 3 probes: " + detail;
  return o;
}

// 9
Outcome ntilde_bound() {
  const PeriodicGrid g(32);
  const auto h = run(solver(32, 1e-3, 0.5, 0.01), taylor_green(g)).history;
  Outcome o;
  std::string detail;
  const double t = 0.5;
  for (double q : {2.0, 4.0}) {
    const double limit = 0.5 / q;
    double a = t;
    for (std::size_t k = h.size() - 1; k-- > 0;) {
      if (orlicz_gradient_integral(h, TimeSet({{h[k].time, t}}), h[k].time, t, q) > limit) break;
      a = h[k].time;
    }
    const TimeSet B({{a, t}});
    const auto r = ntilde_estimate(h, B, a, t, sde(2000), q, 8);
    const double cap = (std::numbers::e - 1.0) * (1.0 + 5.0 * r.relative_std_error);
    o.pass = o.pass && r.hypothesis_integral <= limit && r.bound_holds && r.ntilde <= cap;
    detail += fmt("%sq=%g B=[%.2f, %.2f] hypothesis %.4f <= %.4f, Ntilde %.4f (rel SE %.1e) <= %.4f",
                  detail.empty() ? "" : "; ", q, a, t, r.hypothesis_integral, limit, r.ntilde,
                  r.relative_std_error, cap);
  }
  o.detail = detail;
  return o;
}

// 10
Outcome level_sets_and_integrals() {
  const PeriodicGrid g(32);
  const auto fine = run(solver(32, 1e-3, 1.0, 0.01), taylor_green(g)).history;
  const auto coarse = every_other(fine);
  const std::vector<double> r{0.1, 0.2, 0.3, 0.4, 0.5};
  const std::vector<double> c{0.25, 0.5, 1.0, 2.0, 4.0};
  Outcome o;
  std::string detail;
  std::vector<double> wide;
  for (int k = -6; k <= 2; ++k) wide.push_back(std::ldexp(1.0, k));
  for (int order : {0, 1}) {
    const auto rep = fgt_ratio_report(fine, order, 4.0, 4.0, r, order == 0 ? c : wide);
    const bool ok = rep.bounded(10.0) && !rep.degenerate;
    o.pass = o.pass && ok;
    double mx = 0.0;
    for (double v : rep.c2_of_r) mx = std::max(mx, v);
    detail += fmt("n=%d c2(r) max %.3f median %.3f%s; ", order, mx, rep.median_c2(), rep.degenerate ? " degenerate" : "");
  }
  double drift = 0.0;
  bool finite = true;
  const auto theta = theta_from_string("log");
  for (auto v : {CorollaryVariant::kLebesgue, CorollaryVariant::kL2}) {
    const auto a = corollary_check(fine, theta, 1, 4.0, 4.0, 0.1, 1.0, c, v);
    const auto b = corollary_check(coarse, theta, 1, 4.0, 4.0, 0.1, 1.0, c, v);
    finite = finite && a.finite() && b.finite();
    drift = std::max(drift, std::abs(b.lhs / a.lhs - 1.0));
    for (std::size_t k = 0; k < a.rhs.size(); ++k) drift = std::max(drift, std::abs(b.rhs[k] / a.rhs[k] - 1.0));
  }
  for (int order : {1, 2}) {
    const FunctionalSpec spec{FunctionalKind::kDerivativeLq, 2.0, order};
    const double a = fgt_integral(series(fine, spec), order);
    const double b = fgt_integral(series(coarse, spec), order);
    finite = finite && std::isfinite(a) && std::isfinite(b);
    drift = std::max(drift, std::abs(b / a - 1.0));
  }
  o.pass = o.pass && finite && drift <= 1e-3;
  o.detail = detail + fmt("corollary and FGT integrals %s, largest change under snapshot halving %.1e",
                          finite ? "finite" : "NOT finite", drift);
  return o;
}

// 11
Outcome riccati() {
  Outcome o;
  std::string detail;
  for (double p : {3.0, 4.0}) {
    const double y0 = 1.5;
    const double blow = std::pow(y0, -p) / p;
    DiagnosticSeries s;
    for (int k = 0; k <= 2000; ++k) {
      const double t = 0.9 * blow * k / 2000.0;
      s.push(t, std::pow(std::pow(y0, -p) - p * t, -1.0 / p));
    }
    const auto fit = riccati_envelope(s, p);
    o.pass = o.pass && !fit.infinite && std::abs(fit.c - 1.0) <= 0.05;
    detail += fmt("%sp=%g: c = %.5f", detail.empty() ? "" : "; ", p, fit.c);
  }
  o.detail = "y' = y^(p+1) sampled to 90% of blow-up: " + detail;
  return o;
}

// 12
std::map<std::string, std::string> tree(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    std::ifstream in(e.path(), std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    files[fs::relative(e.path(), dir).generic_string()] = s.str();
  }
  return files;
}

Outcome determinism() {
  const fs::path root = fs::temp_directory_path() / "nsreg_acceptance_determinism";
  fs::remove_all(root);
  fs::create_directories(root);
  const fs::path cfg = root / "run.yaml";
  std::ofstream(cfg) << R"(scenario: taylor-green
seed: 7
solver:
  n: 16
  dt: 0.002
  end_time: 0.3
  snapshot_interval: 0.01
sde:
  particles: 2000
  step: 0.002
diagnostics:
  - kind: prodi_serrin_log
    p: 3
    q: 9
  - kind: bkm
  - kind: orlicz
    q: 2
  - kind: riccati
    p: 3
    q: 9
  - kind: fgt_integral
    order: 1
fk:
  checks: [scalar_oracle, gronwall, measure_preservation]
  T0: 0.2
  t: 0.3
  quadrature: 4
)";
  int failures = 0;
  for (const char* tag : {"a", "b"}) {
    const fs::path out = root / tag;
    const std::string exe = NSREG_EXE;
    const std::string log = " >> " + (root / "log.txt").string() + " 2>&1";
    const std::string man = " --manifest " + (out / "sim" / "manifest.json").string();
    const std::string c = " --config " + cfg.string();
    for (const std::string& cmd :
         {exe + " simulate" + c + " --out " + (out / "sim").string(),
          exe + " diagnose" + c + man + " --out " + (out / "diag").string(),
          exe + " fk-verify" + c + man + " --out " + (out / "fk").string(),
          exe + " fgt-report" + c + man + " --out " + (out / "fgt").string()})
      if (std::system((cmd + log).c_str()) != 0) ++failures;
  }
  const auto a = tree(root / "a");
  const auto b = tree(root / "b");
  std::size_t bytes = 0;
  for (const auto& [k, v] : a) bytes += v.size();
  const bool same = a == b;
  return {failures == 0 && same && a.size() > 10,
          fmt("simulate, diagnose, fk-verify, fgt-report twice: %zu files, %zu bytes, %s, %d command failures",
              a.size(), bytes, same ? "byte-identical" : "DIFFERENT", failures)};
}

const std::vector<std::pair<const char*, std::function<Outcome()>>> kCriteria{
    {"exact shear solution", shear_exact},
    {"spectral identities", spectral_identities},
    {"Orlicz closed form and properties", orlicz_suite},
    {"Feynman-Kac scalar heat oracle", fk_scalar_heat},
    {"magnetization and vorticity identities", magnetization_identity},
    {"path-wise Gronwall certificate", gronwall},
    {"measure preservation", measure_preservation},
    {"flow composition order", composition},
    {"Ntilde bound", ntilde_bound},
    {"level-set ratios and corollary integrals", level_sets_and_integrals},
    {"Riccati envelope", riccati},
    {"end-to-end determinism", determinism},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> which;
  for (int i = 1; i < argc; ++i) {
    const int k = std::atoi(argv[i]);
    if (k < 1 || k > static_cast<int>(kCriteria.size())) {
      std::fprintf(stderr, "unknown criterion '%s'\n", argv[i]);
      return 2;
    }
    which.push_back(k);
  }
  if (which.empty())
    for (int k = 1; k <= static_cast<int>(kCriteria.size()); ++k) which.push_back(k);

  int failed = 0;
  for (int k : which) {
    const auto& [name, fn] = kCriteria[k - 1];
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %2d %s  %s: %s [%.1f s]\n", k, o.pass ? "PASS" : "FAIL", name, o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
