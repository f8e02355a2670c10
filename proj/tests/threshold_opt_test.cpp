#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "core/rng.hpp"
#include "core/threshold_opt.hpp"

using cpsres::AxisValue;
using cpsres::DegreeDistribution;
using cpsres::DelayParams;
using cpsres::Error;
using cpsres::ErrorCode;
using cpsres::SweepAxis;
using cpsres::SystemParams;
using cpsres::ThresholdResult;
using cpsres::Verdict;

namespace {

template <typename Fn>
ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::invalid_argument;
}

SystemParams lossless(int a, double p, const DegreeDistribution& lambda,
                      const DegreeDistribution& rho) {
  return SystemParams(a, p, 0.0, 0.0, 0.0, lambda, rho);
}

DegreeDistribution z(int k) { return DegreeDistribution::point_mass(k); }

DegreeDistribution mix_dist() {
  return DegreeDistribution::from_coefficients(
      {{1, 0.5}, {2, 0.4}, {3, 0.1}});
}

DegreeDistribution random_dist(cpsres::Rng& rng, int max_degree) {
  std::vector<int> degrees;
  for (int k = 1; k <= max_degree; ++k) degrees.push_back(k);
  cpsres::shuffle_in_place(degrees, rng);
  const std::size_t m = 2 + rng.below(3);
  std::vector<DegreeDistribution::Entry> entries;
  double sum = 0.0;
  for (std::size_t i = 0; i < m && i < degrees.size(); ++i) {
    const double w = 0.1 + rng.uniform();
    entries.emplace_back(degrees[i], w);
    sum += w;
  }
  for (auto& [degree, fraction] : entries) fraction /= sum;
  return DegreeDistribution::from_coefficients(entries);
}

void check_interior_bracket(const ThresholdResult& r, double resolution) {
  CHECK(r.lo < r.hi);
  CHECK(r.hi - r.lo <= resolution + 1e-15);
  CHECK(r.verdict_lo == Verdict::healed);
  CHECK(r.verdict_hi != Verdict::healed);
  CHECK(r.epsilon_max == doctest::Approx(0.5 * (r.lo + r.hi)).epsilon(1e-12));
}

}  // namespace

TEST_CASE("thresholds reproduce the reference table") {
  struct Row {
    SystemParams params;
    double expected;
  };
  const std::vector<Row> rows = {
      {lossless(3, 0.8, z(2), z(3)), 0.1002},
      {lossless(5, 0.8, z(2), z(3)), 0.0482},
      {lossless(8, 0.8, z(2), z(3)), 0.0271},
      {lossless(4, 0.4, z(2), z(3)), 0.1621},
      {lossless(4, 0.6, z(2), z(3)), 0.0973},
      {lossless(4, 0.8, z(2), z(3)), 0.0650},
      {lossless(3, 0.5, z(2), z(3)), 0.1933},
      {lossless(3, 0.5, z(5), z(3)), 0.0525},
      {lossless(3, 0.5, z(8), z(3)), 0.0250},
  };
  for (const auto& row : rows) {
    const auto result = cpsres::epsilon_max(row.params, 1e-3);
    CHECK(std::fabs(result.epsilon_max - row.expected) <= 0.002);
    check_interior_bracket(result, 1e-3);
    // The threshold sits at the unstable fixed point of the step map.
    CHECK(std::fabs(cpsres::de_step(result.epsilon_max, row.params) -
                    result.epsilon_max) <= 5e-3);
    // The sufficient bound never exceeds the bisected threshold.
    CHECK(cpsres::epsilon_s(row.params) <=
          result.epsilon_max + 1e-3);
  }
}

TEST_CASE("threshold for the reference walkthrough set") {
  const auto result = cpsres::epsilon_max(lossless(5, 0.2, z(2), z(3)), 1e-3);
  CHECK(std::fabs(result.epsilon_max - 0.23) <= 0.01);
}

TEST_CASE("no contagion pushes the threshold to the right endpoint") {
  const auto result = cpsres::epsilon_max(lossless(3, 0.0, z(2), z(3)), 1e-3);
  CHECK(result.epsilon_max == 1.0);
  CHECK(result.hi == 1.0);
  CHECK(result.lo == doctest::Approx(0.999).epsilon(1e-12));
  CHECK(result.verdict_hi == Verdict::collapsed);
  CHECK(result.verdict_lo != Verdict::collapsed);

  const auto delayed = cpsres::epsilon_max_delayed(
      DelayParams(lossless(3, 0.0, z(2), z(3)), 2), 1e-3);
  CHECK(delayed.epsilon_max == 1.0);

  // A fully lossy heal channel keeps the map at the identity instead.
  const auto dead = cpsres::epsilon_max(
      SystemParams(3, 0.0, 0.0, 0.0, 1.0, z(2), z(3)), 1e-3);
  CHECK(dead.epsilon_max < 0.05);
}

TEST_CASE("resolution is validated and honored") {
  const auto params = lossless(5, 0.2, z(2), z(3));
  CHECK(code_of([&] { cpsres::epsilon_max(params, 0.0); }) ==
        ErrorCode::invalid_argument);
  CHECK(code_of([&] { cpsres::epsilon_max(params, 1.5); }) ==
        ErrorCode::invalid_argument);

  const auto coarse = cpsres::epsilon_max(params, 0.05);
  const auto fine = cpsres::epsilon_max(params, 1e-4);
  check_interior_bracket(coarse, 0.05);
  check_interior_bracket(fine, 1e-4);
  CHECK(fine.epsilon_max >= coarse.lo);
  CHECK(fine.epsilon_max <= coarse.hi);
}

TEST_CASE("delayed thresholds shrink as the response lags") {
  const auto base = lossless(5, 0.15, z(2), z(3));

  const auto direct = cpsres::epsilon_max(base, 1e-3);
  const auto via_delay =
      cpsres::epsilon_max_delayed(DelayParams(base, 0), 1e-3);
  CHECK(via_delay.epsilon_max == direct.epsilon_max);
  CHECK(direct.epsilon_max >= 0.28);
  CHECK(direct.epsilon_max <= 0.31);

  std::vector<double> thresholds;
  for (int d = 1; d <= 4; ++d)
    thresholds.push_back(
        cpsres::epsilon_max_delayed(DelayParams(base, d), 1e-3).epsilon_max);
  for (std::size_t i = 1; i < thresholds.size(); ++i)
    CHECK(thresholds[i] <= thresholds[i - 1]);
  for (int d = 2; d <= 4; ++d)
    CHECK(thresholds[static_cast<std::size_t>(d - 1)] < direct.epsilon_max);

  CHECK(std::fabs(thresholds[2] - 0.0425) <= 2e-3);
}

TEST_CASE("axis names parse and print") {
  CHECK(cpsres::parse_sweep_axis("a") == SweepAxis::block_size);
  CHECK(cpsres::parse_sweep_axis("p") == SweepAxis::contagion);
  CHECK(cpsres::parse_sweep_axis("P_mp") == SweepAxis::loss_phys);
  CHECK(cpsres::parse_sweep_axis("pmp") == SweepAxis::loss_phys);
  CHECK(cpsres::parse_sweep_axis("P_mc") == SweepAxis::loss_conn);
  CHECK(cpsres::parse_sweep_axis("pmi") == SweepAxis::loss_inter);
  CHECK(cpsres::parse_sweep_axis("lambda") == SweepAxis::lambda);
  CHECK(cpsres::parse_sweep_axis("rho") == SweepAxis::rho);
  CHECK(cpsres::parse_sweep_axis("delay_slots") == SweepAxis::delay_slots);
  CHECK(code_of([] { cpsres::parse_sweep_axis("epsilon"); }) ==
        ErrorCode::invalid_argument);

  for (const char* name : {"a", "p", "P_mp", "P_mc", "P_mi", "lambda", "rho",
                           "delay_slots"}) {
    CHECK(std::string(cpsres::sweep_axis_name(
              cpsres::parse_sweep_axis(name))) == name);
  }
}

TEST_CASE("block-size sweep matches the table and trends downward") {
  const auto base = lossless(3, 0.8, z(2), z(3));
  const auto rows = cpsres::sweep(base, SweepAxis::block_size,
                                  {AxisValue(3.0), AxisValue(5.0),
                                   AxisValue(8.0)},
                                  1e-3);
  REQUIRE(rows.size() == 3);
  const double expected_max[] = {0.1002, 0.0482, 0.0271};
  const double expected_s[] = {0.0740, 0.0369, 0.0211};
  for (int i = 0; i < 3; ++i) {
    CHECK(!rows[i].failed);
    CHECK(std::fabs(rows[i].epsilon_max - expected_max[i]) <= 0.002);
    CHECK(std::fabs(rows[i].epsilon_s - expected_s[i]) <= 1e-4);
  }
  CHECK(rows[0].epsilon_max >= rows[1].epsilon_max);
  CHECK(rows[1].epsilon_max >= rows[2].epsilon_max);
}

TEST_CASE("physical-degree sweep reports the closed-form bound per row") {
  const auto base = lossless(3, 0.5, z(2), z(3));
  const auto rows = cpsres::sweep(
      base, SweepAxis::lambda,
      {AxisValue(z(2)), AxisValue(z(5)), AxisValue(z(8))}, 1e-3);
  REQUIRE(rows.size() == 3);
  const double expected_s[] = {0.1250, 0.040816, 0.02};
  for (int i = 0; i < 3; ++i)
    CHECK(std::fabs(rows[i].epsilon_s - expected_s[i]) <= 1e-5);
  CHECK(rows[0].epsilon_max >= rows[1].epsilon_max);
  CHECK(rows[1].epsilon_max >= rows[2].epsilon_max);
}

TEST_CASE("loss sweeps reproduce the reported resilience pattern") {
  const auto base = lossless(4, 0.1, mix_dist(), mix_dist());

  const auto inter = cpsres::sweep(base, SweepAxis::loss_inter,
                                   {AxisValue(0.0), AxisValue(0.4)}, 1e-3);
  REQUIRE(inter.size() == 2);
  CHECK(std::fabs(inter[0].epsilon_max - 0.55) <= 0.05);
  CHECK(inter[1].epsilon_max <= 0.02);

  const auto phys = cpsres::sweep(
      base, SweepAxis::loss_phys,
      {AxisValue(0.0), AxisValue(0.2), AxisValue(0.4)}, 1e-3);
  REQUIRE(phys.size() == 3);
  CHECK(phys[1].epsilon_max >= phys[0].epsilon_max);
  CHECK(phys[2].epsilon_max >= phys[1].epsilon_max);

  const auto conn = cpsres::sweep(base, SweepAxis::loss_conn,
                                  {AxisValue(0.0), AxisValue(0.4)}, 1e-3);
  REQUIRE(conn.size() == 2);
  CHECK(std::fabs(conn[1].epsilon_max - conn[0].epsilon_max) < 0.02);
}

TEST_CASE("a bad sweep value fails its row and spares the rest") {
  const auto base = lossless(4, 0.4, z(2), z(3));
  const auto rows = cpsres::sweep(
      base, SweepAxis::contagion,
      {AxisValue(0.4), AxisValue(7.0), AxisValue(0.6)}, 1e-3);
  REQUIRE(rows.size() == 3);
  CHECK(!rows[0].failed);
  CHECK(rows[1].failed);
  CHECK(rows[1].error == ErrorCode::invalid_argument);
  CHECK(std::isnan(rows[1].epsilon_max));
  CHECK(!rows[2].failed);
  CHECK(std::fabs(rows[0].epsilon_max - 0.1621) <= 0.002);
  CHECK(std::fabs(rows[2].epsilon_max - 0.0973) <= 0.002);

  // Distribution values on a numeric axis fail the row, not the sweep.
  const auto mixed = cpsres::sweep(base, SweepAxis::contagion,
                                   {AxisValue(z(2))}, 1e-3);
  REQUIRE(mixed.size() == 1);
  CHECK(mixed[0].failed);
}

TEST_CASE("delay-slot sweep matches the delayed threshold search") {
  const auto base = lossless(5, 0.15, z(2), z(3));
  const auto rows = cpsres::sweep(base, SweepAxis::delay_slots,
                                  {AxisValue(0.0), AxisValue(1.0),
                                   AxisValue(3.0)},
                                  1e-3);
  REQUIRE(rows.size() == 3);
  const int delays[] = {0, 1, 3};
  for (int i = 0; i < 3; ++i) {
    CHECK(!rows[i].failed);
    CHECK(rows[i].epsilon_max ==
          cpsres::epsilon_max_delayed(DelayParams(base, delays[i]), 1e-3)
              .epsilon_max);
    CHECK(rows[i].epsilon_s == cpsres::epsilon_s(base));
  }

  // Lossy bases cannot drive the delayed recursion.
  const auto lossy = cpsres::sweep(
      SystemParams(5, 0.15, 0.1, 0.0, 0.0, z(2), z(3)),
      SweepAxis::delay_slots, {AxisValue(2.0)}, 1e-3);
  REQUIRE(lossy.size() == 1);
  CHECK(lossy[0].failed);
  CHECK(lossy[0].error == ErrorCode::unsupported_params);
}

TEST_CASE("single-degree optimization is forced") {
  const auto fixed = lossless(4, 0.5, z(2), z(3));
  const auto result = cpsres::optimize_lambda({4}, fixed, 0.5, 1e-3);
  CHECK(result.lambda_star == DegreeDistribution::point_mass(4));
  CHECK(result.evaluations >= 1);

  const SystemParams winner(4, 0.5, 0.0, 0.0, 0.0, result.lambda_star, z(3));
  CHECK(result.epsilon_max_star ==
        cpsres::epsilon_max(winner, 1e-3).epsilon_max);
  CHECK(result.epsilon_s_star == cpsres::epsilon_s(winner));
}

TEST_CASE("optimizer prefers the lightest physical degree") {
  const auto fixed = lossless(3, 0.2, z(2), z(2));
  const auto result = cpsres::optimize_lambda({2, 3}, fixed, 0.25, 1e-3);
  CHECK(result.lambda_star == DegreeDistribution::point_mass(2));
  CHECK(std::fabs(result.epsilon_max_star - 0.4946) <= 0.002);
  CHECK(std::fabs(result.epsilon_s_star - 0.2551) <= 1e-4);
}

TEST_CASE("optimizer result dominates random grid points") {
  const auto fixed = lossless(4, 0.5, z(2), z(3));
  const auto result = cpsres::optimize_lambda({2, 3, 4}, fixed, 0.5, 1e-3);

  double sum = 0.0;
  for (const auto& [degree, fraction] : result.lambda_star.entries()) {
    CHECK((degree == 2 || degree == 3 || degree == 4));
    sum += fraction;
  }
  CHECK(std::fabs(sum - 1.0) <= 1e-12);

  cpsres::Rng rng(606);
  for (int trial = 0; trial < 20; ++trial) {
    // Random composition of 2 grid units over three degrees.
    int units[3] = {0, 0, 0};
    units[rng.below(3)] += 1;
    units[rng.below(3)] += 1;
    std::vector<DegreeDistribution::Entry> entries;
    const int degrees[3] = {2, 3, 4};
    for (int i = 0; i < 3; ++i)
      if (units[i] > 0) entries.emplace_back(degrees[i], units[i] / 2.0);
    const SystemParams candidate(
        4, 0.5, 0.0, 0.0, 0.0,
        DegreeDistribution::from_coefficients(entries), z(3));
    CHECK(cpsres::epsilon_max(candidate, 1e-3).epsilon_max <=
          result.epsilon_max_star + 1e-12);
  }
}

TEST_CASE("optimizer rejects malformed degree sets") {
  const auto fixed = lossless(3, 0.2, z(2), z(2));
  CHECK(code_of([&] { cpsres::optimize_lambda({}, fixed, 0.5, 1e-3); }) ==
        ErrorCode::empty_degrees);
  CHECK(code_of([&] {
          cpsres::optimize_lambda({2, 2}, fixed, 0.5, 1e-3);
        }) == ErrorCode::invalid_argument);
  CHECK(code_of([&] {
          cpsres::optimize_lambda({0, 2}, fixed, 0.5, 1e-3);
        }) == ErrorCode::degree_zero);
  CHECK(code_of([&] {
          cpsres::optimize_lambda({2, 3}, fixed, 0.3, 1e-3);
        }) == ErrorCode::invalid_argument);
  CHECK(code_of([&] {
          cpsres::optimize_lambda({2, 3}, fixed, 0.0, 1e-3);
        }) == ErrorCode::invalid_argument);
}

TEST_CASE("verdicts settle on both sides of the threshold") {
  cpsres::Rng rng(7321);
  for (int trial = 0; trial < 20; ++trial) {
    const int a = 2 + static_cast<int>(rng.below(7));
    const double p = 0.05 + 0.9 * rng.uniform();
    const SystemParams params(a, p, 0.5 * rng.uniform(), 0.5 * rng.uniform(),
                              0.5 * rng.uniform(), random_dist(rng, 8),
                              random_dist(rng, 8));
    const double threshold = cpsres::epsilon_max(params, 1e-3).epsilon_max;
    for (const double eps : {0.02, 0.2, 0.5, 0.9}) {
      if (std::fabs(eps - threshold) < 0.01) continue;
      const auto verdict = cpsres::de_trajectory(params, eps).verdict;
      CHECK(verdict != Verdict::undecided);
      CHECK(verdict ==
            (eps < threshold ? Verdict::healed : Verdict::collapsed));
    }
  }
}
