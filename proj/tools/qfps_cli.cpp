// Command-line front end. Talks to the simulator exclusively through the
// shared C API so it doubles as a living example of that interface.
//
// Exit codes: 0 success, 2 configuration error, 3 when some grid points
// failed (the CSV is still produced), 1 for anything else.
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qfps/qfps.h"

namespace {

int fail(qfps_status status) {
  std::fprintf(stderr, "error: %s\n", qfps_last_error());
  return status == QFPS_ERROR_CONFIG ? 2 : 1;
}

int run_sweep_cmd(const std::string& recipe, const std::string& config_path,
                  const std::vector<std::string>& sets, const std::string& out) {
  std::string config_text;
  if (!config_path.empty()) {
    std::ifstream f(config_path, std::ios::binary);
    if (!f.good()) {
      std::fprintf(stderr, "error: cannot read config file '%s'\n", config_path.c_str());
      return 2;
    }
    std::ostringstream body;
    body << f.rdbuf();
    config_text = body.str();
  }

  std::vector<const char*> set_ptrs;
  set_ptrs.reserve(sets.size());
  for (const std::string& s : sets) set_ptrs.push_back(s.c_str());

  qfps_config* cfg = nullptr;
  qfps_status st = qfps_config_create(
      recipe.empty() ? nullptr : recipe.c_str(), config_text.c_str(),
      set_ptrs.empty() ? nullptr : set_ptrs.data(), set_ptrs.size(),
      out.empty() ? nullptr : out.c_str(), &cfg);
  if (st != QFPS_OK) return fail(st);

  qfps_result* res = nullptr;
  st = qfps_sweep_run(cfg, &res);
  if (st != QFPS_OK) {
    qfps_config_free(cfg);
    return fail(st);
  }

  size_t rows = qfps_result_row_count(res);
  int failed = qfps_result_failed_count(res);
  const char* path = qfps_config_out_path(cfg);
  if (path[0] != '\0')
    std::fprintf(stdout, "wrote %s (%zu rows)\n", path, rows);
  else
    std::fputs(qfps_result_csv(res), stdout);
  if (failed > 0)
    std::fprintf(stderr, "%d of %zu points failed; see the status column\n", failed, rows);

  qfps_result_free(res);
  qfps_config_free(cfg);
  return failed > 0 ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dispersive flux-qubit readout sweeps"};
  app.require_subcommand(1);
  app.set_version_flag("--version", qfps_version());

  std::string recipe, config_path, out;
  std::vector<std::string> sets;
  CLI::App* sweep = app.add_subcommand("sweep", "evaluate a recipe across its grid");
  sweep->add_option("--recipe", recipe, "preset or recipe-kind name (see recipes)");
  sweep->add_option("--config", config_path, "config file with [sweep]/[model]/[fixed] sections");
  sweep->add_option("--set", sets, "override as key=value or section.key=value")
      ->type_name("KEY=VALUE");
  sweep->add_option("--out", out, "output CSV path; prints to stdout when omitted");

  CLI::App* recipes = app.add_subcommand("recipes", "list recipe kinds and figure presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (recipes->parsed()) {
    std::fputs(qfps_recipes(), stdout);
    return 0;
  }
  return run_sweep_cmd(recipe, config_path, sets, out);
}
