#include "mpcoh/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>

#include "mpcoh/csv.hpp"
#include "mpcoh/errors.hpp"

namespace mpcoh {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(std::string_view key, std::string_view value) {
  try {
    const double v = csv::parse_double(value);
    if (!std::isfinite(v)) throw ParameterError("");
    return v;
  } catch (const ParameterError&) {
    throw ParameterError("config key '" + std::string(key) + "': expected a finite number, got '" +
                         std::string(value) + "'");
  }
}

int to_int(std::string_view key, std::string_view value) {
  int v = 0;
  const auto res = std::from_chars(value.data(), value.data() + value.size(), v);
  if (res.ec != std::errc() || res.ptr != value.data() + value.size()) {
    throw ParameterError("config key '" + std::string(key) + "': expected an integer, got '" + std::string(value) +
                         "'");
  }
  return v;
}

template <typename T, typename Convert>
std::vector<T> to_list(std::string_view key, std::string_view value, Convert convert) {
  std::vector<T> out;
  while (!value.empty()) {
    const auto comma = value.find(',');
    const std::string_view item = trim(value.substr(0, comma));
    if (item.empty()) throw ParameterError("config key '" + std::string(key) + "': empty list item");
    out.push_back(convert(key, item));
    if (comma == std::string_view::npos) break;
    value.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace

double RunConfig::grid_step() const { return dt ? *dt : kTwoPi / (200.0 * model.omega0); }

double RunConfig::period_window() const { return w_min ? *w_min : grid_step(); }

std::vector<double> RunConfig::grid() const { return uniform_grid(grid_step(), t_end); }

void RunConfig::validate() const {
  model.validate();
  const double step = grid_step();
  if (!(step > 0.0)) throw ParameterError("invariant dt > 0 violated");
  if (!(t_end >= step)) throw ParameterError("invariant t_end >= dt violated");
  if (!(eps_beta >= 0.0)) throw ParameterError("invariant eps_beta >= 0 violated");
  if (w_min && !(*w_min >= 0.0)) throw ParameterError("invariant w_min >= 0 violated");
  if (cyclic_horizon && !(*cyclic_horizon > 0.0)) throw ParameterError("invariant cyclic_horizon > 0 violated");
  if (n_max_margin < 0) throw ParameterError("invariant n_max_margin >= 0 violated");
  if (substeps < 1) throw ParameterError("invariant substeps >= 1 violated");
  if (std::abs(rho0) > 0.5) throw ParameterError("invariant |rho0| <= 1/2 violated");
  if (oracle_panels < 2 || oracle_panels % 2) throw ParameterError("invariant oracle_panels even and >= 2 violated");
  if (sweep_k && sweep_k->empty()) throw ParameterError("sweep axis sweep_k is empty");
  if (sweep_m && sweep_m->empty()) throw ParameterError("sweep axis sweep_m is empty");
  if (sweep_delta_over_omega0 && sweep_delta_over_omega0->empty()) {
    throw ParameterError("sweep axis sweep_delta_over_omega0 is empty");
  }
}

RunConfig parse_config(std::istream& is) {
  RunConfig cfg;
  std::optional<double> delta_abs;
  std::optional<double> delta_ratio;
  std::string raw;
  int line_no = 0;
  while (std::getline(is, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParameterError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));

    if (key == "omega0") cfg.model.omega0 = to_double(key, value);
    else if (key == "delta") delta_abs = to_double(key, value);
    else if (key == "delta_over_omega0") delta_ratio = to_double(key, value);
    else if (key == "k") cfg.model.k = to_int(key, value);
    else if (key == "m") cfg.model.m = to_int(key, value);
    else if (key == "g_sq") cfg.model.g_sq = to_double(key, value);
    else if (key == "d_sq") cfg.model.d_sq = to_double(key, value);
    else if (key == "dt") cfg.dt = to_double(key, value);
    else if (key == "t_end") cfg.t_end = to_double(key, value);
    else if (key == "branch_policy") {
      const auto policy = parse_branch_policy(value);
      if (!policy) throw ParameterError("config key 'branch_policy': expected least, plus or minus");
      cfg.branch_policy = *policy;
    } else if (key == "eps_beta") cfg.eps_beta = to_double(key, value);
    else if (key == "w_min") cfg.w_min = to_double(key, value);
    else if (key == "cyclic_horizon") cfg.cyclic_horizon = to_double(key, value);
    else if (key == "n_max_margin") cfg.n_max_margin = to_int(key, value);
    else if (key == "output") cfg.output = std::string(value);
    else if (key == "sweep_k") cfg.sweep_k = to_list<int>(key, value, to_int);
    else if (key == "sweep_m") cfg.sweep_m = to_list<int>(key, value, to_int);
    else if (key == "sweep_delta_over_omega0") cfg.sweep_delta_over_omega0 = to_list<double>(key, value, to_double);
    else if (key == "rho0_re") cfg.rho0.real(to_double(key, value));
    else if (key == "rho0_im") cfg.rho0.imag(to_double(key, value));
    else if (key == "representation") {
      if (value == "independent") cfg.representation = Representation::Independent;
      else if (value == "conjugate") cfg.representation = Representation::ConjugateConstrained;
      else throw ParameterError("config key 'representation': expected independent or conjugate");
    } else if (key == "field") {
      if (value == "driven") cfg.field_mode = FieldMode::Driven;
      else if (value == "zero") cfg.field_mode = FieldMode::Zero;
      else if (value == "both") cfg.field_mode = FieldMode::Both;
      else throw ParameterError("config key 'field': expected driven, zero or both");
    } else if (key == "substeps") cfg.substeps = to_int(key, value);
    else if (key == "algebra_tolerance") cfg.algebra_tolerance = to_double(key, value);
    else if (key == "interaction_tolerance") cfg.interaction_tolerance = to_double(key, value);
    else if (key == "oracle_tolerance") cfg.oracle_tolerance = to_double(key, value);
    else if (key == "oracle_panels") cfg.oracle_panels = to_int(key, value);
    else throw ParameterError("config line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
  }
  if (delta_abs && delta_ratio) throw ParameterError("config sets both 'delta' and 'delta_over_omega0'");
  if (delta_abs) cfg.model.delta = *delta_abs;
  if (delta_ratio) cfg.model.delta = *delta_ratio * cfg.model.omega0;
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open config file '" + path + "'");
  return parse_config(in);
}

}  // namespace mpcoh
