#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "mpcoh/config.hpp"
#include "mpcoh/drive.hpp"

namespace mpcoh {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 1,
  kExitNumerical = 2,
  kExitVerification = 3,
};

/// Algebra residuals, interaction-picture consistency and the Markoff oracle
/// on built-in small instances. Writes a text report; returns kExitOk only if
/// every stage passes its threshold, kExitVerification otherwise.
int run_verify(const RunConfig& config, std::ostream& report);

/// Drive profile for the config (one per k when sweep_k lists several).
std::vector<DriveProfile> build_drives(const RunConfig& config, std::vector<ModelParams>& models);

void write_drive_csv(std::ostream& os, const DriveProfile& profile);
DriveProfile read_drive_csv(std::istream& is);

/// Writes drive CSV(s). With several k values an output path is required and
/// each file gets a `_k<K>` suffix. Returns the paths written ("-" = stream).
std::vector<std::string> run_drive(const RunConfig& config, const std::string& out_path, std::ostream& out,
                                   std::ostream& log);

/// Coherence trajectory CSV. drive_csv, when non-empty, replaces the internal
/// drive synthesis.
void run_evolve(const RunConfig& config, const std::string& drive_csv, std::ostream& csv_out);

struct SweepRow {
  int k = 0;
  int m = 0;
  double delta_over_omega0 = 0.0;
  DriveSummary summary;
};

std::vector<SweepRow> sweep_cells(const RunConfig& config, Execution exec = Execution::Parallel);
void run_sweep(const RunConfig& config, std::ostream& csv_out);

struct CommandOptions {
  std::string config_path;
  std::string out_path;
  std::string drive_csv;
  bool quiet = false;
};

/// Runs one subcommand and maps failures to exit codes.
int dispatch(std::string_view command, const CommandOptions& options, std::ostream& out, std::ostream& err);

}  // namespace mpcoh
