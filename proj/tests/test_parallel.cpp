#include <doctest.h>

#include <cstring>

#include "mpcoh/app.hpp"
#include "mpcoh/coherence.hpp"
#include "mpcoh/drive.hpp"
#include "mpcoh/verification.hpp"

using namespace mpcoh;

namespace {

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("parallel root synthesis is bitwise identical to the serial path") {
  INFO("threads = " << max_threads());
  for (double d : {0.0, 0.01}) {
    ModelParams p;
    p.delta = d * p.omega0;
    const auto grid = uniform_grid(3e-10 / 1e5, 3e-10);
    const DriveProfile s = synthesize_profile(p, grid, BranchPolicy::LeastIntensity, kDefaultEpsBeta, Execution::Serial);
    const DriveProfile q = synthesize_profile(p, grid, BranchPolicy::LeastIntensity, kDefaultEpsBeta, Execution::Parallel);
    CHECK(same_bits(s.x_plus, q.x_plus));
    CHECK(same_bits(s.x_minus, q.x_minus));
    CHECK(same_bits(s.x_chosen, q.x_chosen));
    CHECK(same_bits(s.e_amplitude, q.e_amplitude));
    CHECK(s.gated == q.gated);
    CHECK(s.branch == q.branch);
  }
}

TEST_CASE("parallel oracle sweep matches the serial sweep") {
  const OracleCase c = oracle_case(2, 3, {0.2, 0.1});
  const auto times = oracle_times(12, 10.0);
  const std::vector<cplx> e(times.size(), c.e_field);
  const auto s = compare_oracle(c.params, c.couplings, times, e, c.rho_s, 64, Execution::Serial);
  const auto q = compare_oracle(c.params, c.couplings, times, e, c.rho_s, 64, Execution::Parallel);
  CHECK(same_bits(s.rel_dev, q.rel_dev));
  CHECK(s.max_rel_dev == q.max_rel_dev);
}

TEST_CASE("sweep rows do not depend on execution order") {
  RunConfig c;
  c.sweep_k = std::vector<int>{3, 1, 2};
  c.sweep_m = std::vector<int>{100, 10};
  c.sweep_delta_over_omega0 = std::vector<double>{0.01, 0.0};
  const auto s = sweep_cells(c, Execution::Serial);
  const auto q = sweep_cells(c, Execution::Parallel);
  REQUIRE(s.size() == 12);
  REQUIRE(q.size() == s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(s[i].k == q[i].k);
    CHECK(s[i].m == q[i].m);
    CHECK(s[i].delta_over_omega0 == q[i].delta_over_omega0);
    CHECK(s[i].summary.period_T == q[i].summary.period_T);
    CHECK(s[i].summary.gated_fraction == q[i].summary.gated_fraction);
    CHECK(s[i].summary.peak_x == q[i].summary.peak_x);
    CHECK(s[i].summary.max_abs_det == q[i].summary.max_abs_det);
  }
  // Lexicographic (k, m, δ) order.
  CHECK(s.front().k == 1);
  CHECK(s.front().m == 10);
  CHECK(s.front().delta_over_omega0 == 0.0);
  CHECK(s.back().k == 3);
}

TEST_CASE("parallel path validates before spawning threads") {
  ModelParams p;
  std::vector<double> bad{0.0, 0.0};
  CHECK_THROWS(synthesize_profile(p, bad, BranchPolicy::LeastIntensity, kDefaultEpsBeta, Execution::Parallel));
  const OracleCase c = oracle_case(1, 2, 0.0);
  std::vector<double> times{1.0};
  std::vector<cplx> e(1, 0.0);
  CHECK_THROWS(compare_oracle(c.params, c.couplings, times, e, c.rho_s, 3, Execution::Parallel));
}
