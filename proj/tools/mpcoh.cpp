// Command-line front end: verify, drive, evolve, sweep.
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mpcoh/app.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Coherence control in a multiphoton supersymmetric two-level model"};
  app.require_subcommand(1);

  mpcoh::CommandOptions opts;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opts.config_path, "key = value config file")->check(CLI::ExistingFile);
    sub->add_option("--out", opts.out_path, "output path (stdout when omitted)");
    sub->add_flag("--quiet", opts.quiet, "suppress the progress log");
  };

  auto* verify = app.add_subcommand("verify", "algebra, interaction-picture and Markoff-oracle checks");
  auto* drive = app.add_subcommand("drive", "synthesize the control-field intensity");
  auto* evolve = app.add_subcommand("evolve", "integrate the off-diagonal coherence");
  auto* sweep = app.add_subcommand("sweep", "drive summaries over a (k, m, delta) grid");
  for (auto* sub : {verify, drive, evolve, sweep}) add_common(sub);
  evolve->add_option("--drive-csv", opts.drive_csv, "drive CSV produced by `drive`")->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : mpcoh::kExitConfig;
  }

  std::ios::sync_with_stdio(false);
  const std::string command = app.get_subcommands().front()->get_name();
  const int code = mpcoh::dispatch(command, opts, std::cout, std::cerr);
  std::cout.flush();
  return code;
}
