#include "mpcoh/app.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "mpcoh/csv.hpp"
#include "mpcoh/errors.hpp"
#include "mpcoh/verification.hpp"

namespace mpcoh {

namespace {

std::string sci(double v) {
  std::ostringstream ss;
  ss << std::scientific << std::setprecision(3) << v;
  return ss.str();
}

const char* verdict(bool pass) { return pass ? "PASS" : "FAIL"; }

// Pads to a display width, counting UTF-8 code points rather than bytes.
std::string pad(const std::string& text, std::size_t width) {
  std::size_t points = 0;
  for (unsigned char c : text) points += (c & 0xC0) != 0x80;
  return text + std::string(points < width ? width - points : 1, ' ');
}

std::string with_suffix(const std::string& path, const std::string& suffix) {
  const auto slash = path.find_last_of('/');
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + suffix;
  return path.substr(0, dot) + suffix + path.substr(dot);
}

std::ofstream open_output(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ParameterError("cannot write output file '" + path + "'");
  return os;
}

void check_finite(const DriveProfile& p) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!std::isfinite(p.x_chosen[i]) || !std::isfinite(p.e_amplitude[i])) {
      throw NumericalFailure("non-finite drive value escaped the gate at t = " + csv::format(p.grid[i]));
    }
  }
}

std::vector<int> sorted_unique(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

int run_verify(const RunConfig& config, std::ostream& report) {
  config.validate();
  bool all_pass = true;

  report << "== supersymmetric algebra (k = 1..3, m = 1..10, projected below the cutoff)\n";
  const auto residuals = algebra_suite({1, 2, 3}, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}, config.n_max_margin);
  for (const auto& r : residuals) {
    const bool pass = r.residual < config.algebra_tolerance;
    all_pass = all_pass && pass;
    report << "  " << pad(r.name, 18) << "residual " << sci(r.residual) << "  "
           << verdict(pass) << '\n';
  }

  report << "== interaction picture vs explicit V(t) transform (100 times, k = 1, 2)\n";
  for (int k : {1, 2}) {
    const double dev = interaction_picture_deviation(interaction_case(k, config.n_max_margin));
    const bool pass = dev < config.interaction_tolerance;
    all_pass = all_pass && pass;
    report << "  k = " << k << "  max entry deviation " << sci(dev) << "  " << verdict(pass) << '\n';
  }

  report << "== Markoff oracle (double commutator, " << config.oracle_panels
         << " Simpson panels) vs analytic c1 rho-+ - c2 rho+-\n";
  for (const OracleCase& c : default_oracle_cases()) {
    const OracleComparison cmp = run_oracle_case(c, oracle_times(), config.oracle_panels);
    const bool pass = cmp.max_rel_dev <= config.oracle_tolerance;
    all_pass = all_pass && pass;
    report << "  k = " << c.params.k << ", m = " << c.params.m << ", |E| = " << std::abs(c.e_field)
           << "  max relative deviation " << sci(cmp.max_rel_dev) << "  " << verdict(pass) << '\n';
  }

  report << (all_pass ? "verify: all checks passed\n" : "verify: FAILED\n");
  return all_pass ? kExitOk : kExitVerification;
}

std::vector<DriveProfile> build_drives(const RunConfig& config, std::vector<ModelParams>& models) {
  config.validate();
  const std::vector<int> ks = config.sweep_k ? sorted_unique(*config.sweep_k) : std::vector<int>{config.model.k};
  const std::vector<double> grid = config.grid();
  std::vector<DriveProfile> out;
  models.clear();
  for (int k : ks) {
    ModelParams p = config.model;
    p.k = k;
    p.validate();
    DriveProfile profile = synthesize_profile(p, grid, config.branch_policy, config.eps_beta, Execution::Parallel);
    attach_period(profile, config.period_window());
    if (config.cyclic_horizon) profile = cyclic_extend(profile, *config.cyclic_horizon);
    check_finite(profile);
    models.push_back(p);
    out.push_back(std::move(profile));
  }
  return out;
}

void write_drive_csv(std::ostream& os, const DriveProfile& p) {
  csv::write_row(os, {"t", "x_plus", "x_minus", "x_chosen", "e_amplitude", "gated", "branch", "period_T"});
  const std::string period = p.period_T ? csv::format(*p.period_T) : std::string();
  for (std::size_t i = 0; i < p.size(); ++i) {
    csv::write_row(os, {csv::format(p.grid[i]), csv::format(p.x_plus[i]), csv::format(p.x_minus[i]),
                        csv::format(p.x_chosen[i]), csv::format(p.e_amplitude[i]), p.gated[i] ? "1" : "0",
                        std::string(to_string(p.branch[i])), period});
  }
}

DriveProfile read_drive_csv(std::istream& is) {
  const csv::Table table = csv::read(is);
  const std::size_t ct = table.column("t"), cxp = table.column("x_plus"), cxm = table.column("x_minus"),
                    cx = table.column("x_chosen"), ce = table.column("e_amplitude"), cg = table.column("gated"),
                    cb = table.column("branch"), cT = table.column("period_T");
  DriveProfile p;
  for (const auto& row : table.rows) {
    p.grid.push_back(csv::parse_double(row[ct]));
    p.x_plus.push_back(csv::parse_double(row[cxp]));
    p.x_minus.push_back(csv::parse_double(row[cxm]));
    p.x_chosen.push_back(csv::parse_double(row[cx]));
    p.e_amplitude.push_back(csv::parse_double(row[ce]));
    if (row[cg] != "0" && row[cg] != "1") throw ParameterError("drive CSV: gated must be 0 or 1");
    p.gated.push_back(row[cg] == "1" ? 1 : 0);
    const auto branch = parse_branch(row[cb]);
    if (!branch) throw ParameterError("drive CSV: unknown branch '" + row[cb] + "'");
    p.branch.push_back(*branch);
    if (!row[cT].empty() && !p.period_T) p.period_T = csv::parse_double(row[cT]);
  }
  if (p.period_T) {
    const auto it = std::find(p.grid.begin(), p.grid.end(), *p.period_T);
    if (it != p.grid.end()) p.period_index = static_cast<std::size_t>(it - p.grid.begin());
  }
  return p;
}

std::vector<std::string> run_drive(const RunConfig& config, const std::string& out_path, std::ostream& out,
                                   std::ostream& log) {
  std::vector<ModelParams> models;
  const std::vector<DriveProfile> profiles = build_drives(config, models);
  const std::string path = out_path.empty() ? config.output : out_path;
  if (profiles.size() > 1 && path.empty()) throw ParameterError("drive: several k values need an output path");

  std::vector<std::string> written;
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    const DriveSummary s = summarize(models[i], profiles[i]);
    log << "drive k=" << models[i].k << " m=" << models[i].m << " delta/omega0=" << models[i].delta / models[i].omega0
        << " points=" << profiles[i].size() << " gated_fraction=" << s.gated_fraction
        << " peak_x=" << csv::format(s.peak_x)
        << " period_T=" << (s.period_T ? csv::format(*s.period_T) : std::string("none")) << '\n';
    if (path.empty()) {
      write_drive_csv(out, profiles[i]);
      written.emplace_back("-");
      continue;
    }
    const std::string file = profiles.size() > 1 ? with_suffix(path, "_k" + std::to_string(models[i].k)) : path;
    std::ofstream os = open_output(file);
    write_drive_csv(os, profiles[i]);
    written.push_back(file);
  }
  return written;
}

void run_evolve(const RunConfig& config, const std::string& drive_csv, std::ostream& csv_out) {
  config.validate();
  std::vector<double> grid;
  std::vector<double> drive_x;
  const bool wants_drive = config.field_mode != FieldMode::Zero;
  if (!drive_csv.empty()) {
    std::ifstream in(drive_csv);
    if (!in) throw ParameterError("cannot open drive CSV '" + drive_csv + "'");
    const DriveProfile p = read_drive_csv(in);
    if (p.size() == 0) throw ParameterError("drive CSV has no rows");
    grid = p.grid;
    drive_x = p.x_chosen;
  } else {
    grid = config.grid();
    if (wants_drive) {
      const DriveProfile p =
          synthesize_profile(config.model, grid, config.branch_policy, config.eps_beta, Execution::Parallel);
      check_finite(p);
      drive_x = p.x_chosen;
    }
  }

  EvolveOptions opts;
  opts.representation = config.representation;
  opts.substeps = config.substeps;
  const CoherenceState rho0 = CoherenceState::conjugate_pair(config.rho0);

  std::vector<CoherenceTrajectory> runs;
  std::vector<std::string> suffixes;
  if (config.field_mode == FieldMode::Driven || config.field_mode == FieldMode::Both) {
    runs.push_back(evolve(config.model, grid, drive_x, rho0, opts));
    suffixes.emplace_back(config.field_mode == FieldMode::Both ? "_driven" : "");
  }
  if (config.field_mode == FieldMode::Zero || config.field_mode == FieldMode::Both) {
    runs.push_back(evolve(config.model, grid, {}, rho0, opts));
    suffixes.emplace_back(config.field_mode == FieldMode::Both ? "_zero" : "");
  }

  static const char* kColumns[] = {"re_rho_mp", "im_rho_mp", "abs_rho_mp", "re_c1",        "im_c1",
                                   "c2",        "det",       "null_mode_abs", "other_mode_abs"};
  std::vector<std::string> header{"t"};
  for (const auto& suffix : suffixes)
    for (const char* c : kColumns) header.push_back(std::string(c) + suffix);
  csv::write_row(csv_out, header);

  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::vector<std::string> row{csv::format(grid[i])};
    for (const auto& r : runs) {
      const cplx rho = r.states[i].rho_mp;
      row.push_back(csv::format(rho.real()));
      row.push_back(csv::format(rho.imag()));
      row.push_back(csv::format(std::abs(rho)));
      row.push_back(csv::format(r.c1[i].real()));
      row.push_back(csv::format(r.c1[i].imag()));
      row.push_back(csv::format(r.c2[i]));
      row.push_back(csv::format(r.det_trace[i]));
      row.push_back(csv::format(r.null_mode_abs[i]));
      row.push_back(csv::format(r.other_mode_abs[i]));
    }
    csv::write_row(csv_out, row);
  }
}

std::vector<SweepRow> sweep_cells(const RunConfig& config, Execution exec) {
  config.validate();
  if (!config.sweep_k && !config.sweep_m && !config.sweep_delta_over_omega0) {
    throw ParameterError("sweep: no sweep axes defined (sweep_k, sweep_m, sweep_delta_over_omega0)");
  }
  const auto ks = sorted_unique(config.sweep_k.value_or(std::vector<int>{config.model.k}));
  const auto ms = sorted_unique(config.sweep_m.value_or(std::vector<int>{config.model.m}));
  const auto ds = sorted_unique(
      config.sweep_delta_over_omega0.value_or(std::vector<double>{config.model.delta / config.model.omega0}));

  std::vector<SweepRow> rows;
  std::vector<ModelParams> models;
  for (int k : ks) {
    for (int m : ms) {
      for (double d : ds) {
        ModelParams p = config.model;
        p.k = k;
        p.m = m;
        p.delta = d * p.omega0;
        p.validate();
        rows.push_back(SweepRow{k, m, d, {}});
        models.push_back(p);
      }
    }
  }

  const std::vector<double> grid = config.grid();
  auto cell = [&](std::size_t i) {
    DriveProfile profile = synthesize_profile(models[i], grid, config.branch_policy, config.eps_beta);
    attach_period(profile, config.period_window());
    rows[i].summary = summarize(models[i], profile);
  };
  if (exec == Execution::Parallel) {
    const auto count = static_cast<std::ptrdiff_t>(rows.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; ++i) cell(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < rows.size(); ++i) cell(i);
  }
  return rows;
}

void run_sweep(const RunConfig& config, std::ostream& csv_out) {
  const auto rows = sweep_cells(config);
  csv::write_row(csv_out, {"k", "m", "delta_over_omega0", "period_T", "gated_fraction", "peak_x", "max_abs_det",
                           "max_rel_det"});
  for (const auto& r : rows) {
    csv::write_row(csv_out, {std::to_string(r.k), std::to_string(r.m), csv::format(r.delta_over_omega0),
                             r.summary.period_T ? csv::format(*r.summary.period_T) : std::string(),
                             csv::format(r.summary.gated_fraction), csv::format(r.summary.peak_x),
                             csv::format(r.summary.max_abs_det), csv::format(r.summary.max_rel_det)});
  }
}

int dispatch(std::string_view command, const CommandOptions& options, std::ostream& out, std::ostream& err) {
  try {
    const RunConfig config = options.config_path.empty() ? RunConfig{} : load_config(options.config_path);
    config.validate();
    std::ostringstream sink;
    std::ostream& log = options.quiet ? static_cast<std::ostream&>(sink) : err;

    if (command == "verify") {
      std::ostringstream report;
      const int code = run_verify(config, report);
      if (!options.quiet || code != kExitOk) out << report.str();
      return code;
    }
    if (command == "drive") {
      run_drive(config, options.out_path, out, log);
      return kExitOk;
    }

    const std::string path = options.out_path.empty() ? config.output : options.out_path;
    auto emit = [&](auto&& writer) {
      if (path.empty()) {
        writer(out);
      } else {
        std::ofstream os = open_output(path);
        writer(os);
      }
    };
    if (command == "evolve") {
      emit([&](std::ostream& os) { run_evolve(config, options.drive_csv, os); });
      return kExitOk;
    }
    if (command == "sweep") {
      emit([&](std::ostream& os) { run_sweep(config, os); });
      return kExitOk;
    }
    err << "unknown command '" << command << "'\n";
    return kExitConfig;
  } catch (const ParameterError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace mpcoh
