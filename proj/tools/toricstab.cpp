// Command line front end for the toric stability library.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "toricstab/toricstab.hpp"

namespace ts = toricstab;

namespace {

void add_common(CLI::App* cmd, ts::JobSpec& job) {
  cmd->add_option("--polytope", job.polytope_path, "polytope JSON file")
      ->required();
  cmd->add_option("--output,-o", job.output_path, "write the report here");
  cmd->add_option("--format", job.format, "json | csv | text")
      ->check(CLI::IsMember({"json", "csv", "text"}));
}

int emit(const ts::ReportEnvelope& env, const ts::JobSpec& job) {
  const std::string text = ts::render(env, job);
  if (job.output_path.empty())
    std::cout << text;
  else
    ts::write_file(job.output_path, text);
  return env.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact stability checks for polarized toric manifolds"};
  app.set_version_flag("--version",
                       std::string(ts::kToolName) + " " + ts::kVersion);
  app.require_subcommand(1);

  ts::JobSpec job;

  auto* verify = app.add_subcommand(
      "verify", "check the three Delzant conditions of a lattice polytope");
  add_common(verify, job);

  auto* ehrhart = app.add_subcommand(
      "ehrhart", "Ehrhart polynomial, volume and boundary measure");
  add_common(ehrhart, job);

  auto* chow =
      app.add_subcommand("chow", "torus Chow semistability at a level");
  add_common(chow, job);
  chow->add_option("--level,-i", job.level, "lattice refinement level")
      ->check(CLI::PositiveNumber);
  chow->add_option("--cap", job.cap,
                   "exact-path cap on |A_i| (default 16, env TORICSTAB_CAP)");
  chow->add_flag("--exact", job.force_exact,
                 "exact LP decision only (default)");
  chow->add_flag("--search", job.force_search,
                 "destabilizer search, works beyond the cap");
  chow->add_option("--seed", job.seed, "search seed");

  auto* kstab = app.add_subcommand(
      "kstab", "K-semistability tests for toric degenerations");
  add_common(kstab, job);
  kstab->add_option("--g", job.weights_path,
                    "weight vector JSON inducing the test function");
  kstab->add_option("--kmax", job.kmax, "sweep length for the profiles")
      ->check(CLI::Range(4, 512));

  auto* relative = app.add_subcommand(
      "relative", "relative Chow semistability with the extremal function");
  add_common(relative, job);
  relative->add_option("--level,-i", job.level, "lattice refinement level")
      ->check(CLI::PositiveNumber);
  relative->add_option("--cap", job.cap, "exact-path cap on |A_i|");

  auto* scan = app.add_subcommand(
      "scan", "batch screening of a directory of polytope files");
  scan->add_option("dir", job.polytope_path, "directory of polytope JSONs")
      ->required();
  scan->add_option("--levels", job.levels, "levels to screen (default 1)");
  scan->add_option("--cap", job.cap, "exact-path cap on |A_i|");
  scan->add_option("--output,-o", job.output_path, "write the report here");
  scan->add_option("--format", job.format, "json | csv | text")
      ->check(CLI::IsMember({"json", "csv", "text"}));

  CLI11_PARSE(app, argc, argv);

  for (auto* cmd : {verify, ehrhart, chow, kstab, relative, scan})
    if (cmd->parsed()) job.command = cmd->get_name();

  try {
    return emit(ts::run(job), job);
  } catch (const ts::resource_error& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return 4;
  } catch (const ts::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ts::json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
