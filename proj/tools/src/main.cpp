#include <iostream>

#include "CLI11.hpp"
#include "nsreg/cli/commands.hpp"

namespace {

constexpr const char* kFooter = R"(Outputs
  simulate      manifest.json, config.yaml, snapshots/u_NNNNN.bin
                energy.csv: time,energy   (energy = 1/2 int |u|^2)
  diagnose      series.csv: time, then one column per sampled norm
                  u_L<q>        |u(t)|_q
                  w_Linf        |curl u(t)|_inf
                  gradu_Phi<q>  Orlicz norm of |grad u(t)|
                  grad<n>u_L<q> |grad^n u(t)|_q
                summary.json: one value per configured diagnostic
  fk-verify     fk.jsonl (one record per estimate), fk_summary.json
  fgt-report    fgt_report.json
  norms         JSON on stdout

Exit codes: 0 success, 1 usage or config error, 2 numerical blow-up.)";

}  // namespace

int main(int argc, char** argv) {
  using namespace nsreg::cli;
  CLI::App app{"Pseudo-spectral Navier-Stokes runs, regularity diagnostics and stochastic checks"};
  app.footer(kFooter);
  app.require_subcommand(1);

  CommandOptions opts;
  std::string config, out, manifest, snapshot;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* sub, bool needs_manifest) {
    sub->add_option("--config", config, "YAML run configuration")->check(CLI::ExistingFile);
    sub->add_option("--out", out, "output directory");
    sub->add_option("--seed", seed, "override the configured seed");
    sub->add_flag("--force", opts.force, "overwrite existing outputs");
    if (needs_manifest) sub->add_option("--manifest", manifest, "manifest.json written by simulate");
  };

  auto* simulate = app.add_subcommand("simulate", "run the solver and store snapshots");
  add_common(simulate, false);
  simulate->get_option("--config")->required();
  auto* diagnose = app.add_subcommand("diagnose", "sample norms and integrate criteria");
  add_common(diagnose, true);
  auto* fk = app.add_subcommand("fk-verify", "Monte Carlo checks against grid oracles");
  add_common(fk, true);
  auto* fgt = app.add_subcommand("fgt-report", "level-set ratios and corollary integrals");
  add_common(fgt, true);
  auto* norms = app.add_subcommand("norms", "norms of one snapshot file");
  norms->add_option("snapshot", snapshot, "snapshot file")->required();
  norms->add_option("--q", opts.q, "Lebesgue exponents (inf allowed)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (!config.empty()) opts.config = config;
  if (!out.empty()) opts.out = out;
  if (!manifest.empty()) opts.manifest = manifest;
  for (auto* sub : {simulate, diagnose, fk, fgt})
    if (sub->parsed() && sub->count("--seed")) opts.seed = seed;
  opts.snapshot = snapshot;

  if (simulate->parsed()) return cmd_simulate(opts, std::cout, std::cerr);
  if (diagnose->parsed()) return cmd_diagnose(opts, std::cout, std::cerr);
  if (fk->parsed()) return cmd_fk_verify(opts, std::cout, std::cerr);
  if (fgt->parsed()) return cmd_fgt_report(opts, std::cout, std::cerr);
  return cmd_norms(opts, std::cout, std::cerr);
}
