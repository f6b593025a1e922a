// Command-line driver: check suites, slice quotients, and horizon-profile
// scans over the warped-product curvature stack.
//
// Exit codes: 0 when every check passes, 1 when any check fails (failing
// names go to stderr), 2 for configuration errors raised after parsing,
// CLI11's own codes for usage errors.  Reports are byte-stable for a fixed
// (config, seed, build); GBQ_THREADS caps worker threads.

#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "gbq/suites.hpp"

namespace {

int emit_and_grade(const gbq::SuiteConfig& cfg, const gbq::Report& rep) {
  for (const gbq::Check& c : rep.checks) {
    std::printf("[%s] %-40s value=%s tolerance=%s\n",
                c.pass ? "PASS" : "FAIL", c.name.c_str(),
                gbq::format_double(c.value).c_str(),
                gbq::format_double(c.tolerance).c_str());
  }
  const std::vector<std::string> failed = rep.failing();
  std::printf("%zu checks, %zu failed\n", rep.checks.size(), failed.size());
  if (!cfg.report_path.empty())
    gbq::write_file(cfg.report_path, gbq::to_json(rep));
  if (!cfg.csv_path.empty()) gbq::write_file(cfg.csv_path, gbq::to_csv(rep));
  for (const std::string& name : failed)
    std::fprintf(stderr, "FAILED: %s\n", name.c_str());
  return failed.empty() ? 0 : 1;
}

// Every subcommand accepts the full option set so one config file can feed
// any of them; options a subcommand does not consult are still echoed into
// the report's params block.
void add_common_options(CLI::App* cmd, gbq::SuiteConfig& cfg,
                        std::string& config_path) {
  cmd->add_option("--suite", cfg.suite, "check suite to run")
      ->check(CLI::IsMember(gbq::suite_names()));
  cmd->add_option("--preset", cfg.preset, "ambient model preset")
      ->check(CLI::IsMember(gbq::preset_names()));
  cmd->add_option("--n,--dim", cfg.n, "ambient dimension");
  cmd->add_option("--k", cfg.k, "curvature degree k");
  cmd->add_option("--kappa", cfg.kappa, "fiber curvature (kottler preset)");
  cmd->add_option("--mass", cfg.mass, "mass parameter (kottler preset)");
  cmd->add_option("--r0", cfg.r0, "slice radius");
  cmd->add_option("--eps", cfg.eps, "perturbation amplitudes")
      ->delimiter(',');
  cmd->add_option("--grid", cfg.grid, "nodes per fiber axis");
  cmd->add_option("--seed", cfg.seed, "seed for randomized batteries");
  cmd->add_option("--tol", cfg.tol, "slice-quotient tolerance");
  cmd->add_option("--report", cfg.report_path, "write the JSON report here");
  cmd->add_option("--csv", cfg.csv_path, "write the flattened checks here");
  cmd->add_flag("--check-logconvex", cfg.check_logconvex,
                "gate on log-convexity of the reconstructed warping");
  cmd->add_option("--config", config_path,
                  "flat key = value file; flags override file values");
}

// File values fill in whatever the command line did not set explicitly.
void apply_config(const CLI::App& cmd, gbq::SuiteConfig& cfg,
                  const std::string& path) {
  if (path.empty()) return;
  gbq::load_config_file(cfg, path, [&](const std::string& flag) {
    return cmd.count(flag) > 0;
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Gauss-Bonnet curvature checks on warped-product hypersurfaces"};
  app.require_subcommand(1);
  gbq::SuiteConfig cfg;
  std::string config_path;
  int rc = 0;

  CLI::App* verify =
      app.add_subcommand("verify", "run a named check suite and grade it");
  add_common_options(verify, cfg, config_path);
  verify->callback([&] {
    apply_config(*verify, cfg, config_path);
    rc = emit_and_grade(cfg, gbq::suites::run_suite(cfg));
  });

  CLI::App* slice = app.add_subcommand(
      "slice", "compare a slice's curvature quotient with its closed form");
  add_common_options(slice, cfg, config_path);
  slice->callback([&] {
    apply_config(*slice, cfg, config_path);
    rc = emit_and_grade(cfg, gbq::suites::run_slice(cfg));
  });

  CLI::App* kottler = app.add_subcommand(
      "kottler", "reconstruct a horizon profile and scan its log-convexity");
  add_common_options(kottler, cfg, config_path);
  kottler->callback([&] {
    apply_config(*kottler, cfg, config_path);
    rc = emit_and_grade(cfg, gbq::suites::run_kottler(cfg));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return rc;
}
