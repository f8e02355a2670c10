#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "core/de_engine.hpp"
#include "core/rng.hpp"

using cpsres::DegreeDistribution;
using cpsres::Error;
using cpsres::ErrorCode;
using cpsres::SystemParams;
using cpsres::Trajectory;
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

// The threshold recursion written out in one expression, exactly as the
// composed step should expand. Kept free of any shared helpers on purpose.
double expanded_step(double x, int a, double p, double pmp, double pmc,
                     double pmi, const DegreeDistribution& lambda,
                     const DegreeDistribution& rho) {
  const double A =
      x + (1.0 - x) * (1.0 - lambda.eval(1.0 - p * x)) * (1.0 - pmp);
  const double B =
      1.0 -
      std::pow((1.0 - x -
                (1.0 - x) * (1.0 - lambda.eval(1.0 - p * x)) * (1.0 - pmp)) *
                   (1.0 - pmi),
               a - 1) *
          (1.0 -
           rho.eval(std::pow((1.0 - pmi) *
                                 (x + (1.0 - x) *
                                          (1.0 - lambda.eval(1.0 - p * x)) *
                                          (1.0 - pmp)),
                             a) *
                    (1.0 - pmc)));
  return A * B + A * (1.0 - B) * pmi;
}

}  // namespace

TEST_CASE("params are validated") {
  CHECK(code_of([] { lossless(0, 0.5, z(2), z(3)); }) ==
        ErrorCode::invalid_argument);
  CHECK(code_of([] { lossless(3, 1.5, z(2), z(3)); }) ==
        ErrorCode::invalid_argument);
  CHECK(code_of([] {
          SystemParams(3, 0.5, -0.1, 0.0, 0.0, z(2), z(3));
        }) == ErrorCode::invalid_argument);
  CHECK(code_of([] {
          SystemParams(3, 0.5, 0.0, 0.0, 1.1, z(2), z(3));
        }) == ErrorCode::invalid_argument);
  CHECK(lossless(3, 0.5, z(2), z(3)).lossless());
  CHECK(!SystemParams(3, 0.5, 0.0, 0.2, 0.0, z(2), z(3)).lossless());
}

TEST_CASE("step matches a hand-composed evaluation") {
  const auto params = lossless(5, 0.2, z(2), z(3));

  const double y = 0.1 + 0.9 * (1.0 - 0.98 * 0.98);
  const double w = std::pow(y, 5);
  const double u = 1.0 - std::pow(1.0 - y, 4) * (1.0 - w * w * w);
  const double expected = y * u;

  const double got = cpsres::de_step(0.1, params);
  CHECK(std::fabs(got - expected) <= 1e-12);
  CHECK(std::fabs(got - 0.0599) <= 5e-5);
}

TEST_CASE("step agrees with the fully expanded recursion") {
  cpsres::Rng rng(777);
  for (int trial = 0; trial < 50; ++trial) {
    const int a = 1 + static_cast<int>(rng.below(8));
    const double p = rng.uniform();
    const double pmp = rng.uniform() * 0.8;
    const double pmc = rng.uniform() * 0.8;
    const double pmi = rng.uniform() * 0.8;
    const auto lambda = random_dist(rng, 8);
    const auto rho = random_dist(rng, 8);
    const SystemParams params(a, p, pmp, pmc, pmi, lambda, rho);
    const double x = rng.uniform();
    const double direct = expanded_step(x, a, p, pmp, pmc, pmi, lambda, rho);
    CHECK(std::fabs(cpsres::de_step(x, params) - direct) <= 1e-12);
  }
}

TEST_CASE("absorbing endpoints") {
  cpsres::Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const int a = 1 + static_cast<int>(rng.below(8));
    const SystemParams params(a, rng.uniform(), rng.uniform(), rng.uniform(),
                              rng.uniform(), random_dist(rng, 6),
                              random_dist(rng, 6));
    CHECK(cpsres::de_step(0.0, params) == 0.0);
  }
  for (int trial = 0; trial < 20; ++trial) {
    const int a = 2 + static_cast<int>(rng.below(7));
    const SystemParams params(a, rng.uniform(), rng.uniform(), rng.uniform(),
                              0.0, random_dist(rng, 6), random_dist(rng, 6));
    CHECK(cpsres::de_step(1.0, params) == 1.0);
  }
}

TEST_CASE("step stays inside the unit interval") {
  const std::vector<SystemParams> sets = {
      lossless(5, 0.2, z(2), z(3)),
      SystemParams(3, 0.9, 0.7, 0.6, 0.5, mix_dist(), z(3)),
      SystemParams(1, 1.0, 0.0, 0.0, 0.9, z(8), mix_dist()),
      SystemParams(8, 0.5, 1.0, 1.0, 1.0, z(2), z(1))};
  for (const auto& params : sets) {
    for (int i = 0; i <= 10000; ++i) {
      const double x = i / 10000.0;
      const double v = cpsres::de_step(x, params);
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
  }
}

TEST_CASE("step is monotone in the current density") {
  const std::vector<SystemParams> sets = {
      lossless(5, 0.2, z(2), z(3)), lossless(3, 0.8, z(2), z(3)),
      lossless(4, 0.1, mix_dist(), mix_dist()), lossless(2, 0.6, z(3), z(2))};
  for (const auto& params : sets) {
    double prev = 0.0;
    for (int i = 0; i <= 2000; ++i) {
      const double v = cpsres::de_step(i / 2000.0, params);
      CHECK(v >= prev - 1e-15);
      prev = v;
    }
  }
}

TEST_CASE("step rejects densities outside the unit interval") {
  const auto params = lossless(3, 0.5, z(2), z(3));
  CHECK(code_of([&] { cpsres::de_step(-0.1, params); }) ==
        ErrorCode::domain_error);
  CHECK(code_of([&] { cpsres::de_step(1.1, params); }) ==
        ErrorCode::domain_error);
}

TEST_CASE("threshold value is close to a fixed point") {
  const auto params = lossless(3, 0.8, z(2), z(3));
  CHECK(std::fabs(cpsres::de_step(0.1002, params) - 0.1002) < 1e-3);
}

TEST_CASE("trajectory classifies both sides of the threshold") {
  const auto params = lossless(5, 0.2, z(2), z(3));

  const auto zero = cpsres::de_trajectory(params, 0.0);
  CHECK(zero.verdict == Verdict::healed);
  CHECK(zero.densities.size() == 1);
  CHECK(zero.densities[0] == 0.0);

  const auto small = cpsres::de_trajectory(params, 0.05);
  CHECK(small.verdict == Verdict::healed);
  CHECK(small.densities.size() <= 25);  // heals in a handful of rounds
  CHECK(small.densities[0] == 0.05);
  CHECK(small.last() < cpsres::kDefaultHealTol);

  const auto big = cpsres::de_trajectory(params, 0.3);
  CHECK(big.verdict == Verdict::collapsed);
  CHECK(big.last() > 1.0 - cpsres::kDefaultHealTol);

  // Tiny budget near the threshold leaves the verdict open.
  const auto stuck = cpsres::de_trajectory(params, 0.23, 3);
  CHECK(stuck.verdict == Verdict::undecided);
  CHECK(stuck.densities.size() == 4);
}

TEST_CASE("trajectory arguments are validated") {
  const auto params = lossless(3, 0.5, z(2), z(3));
  CHECK(code_of([&] { cpsres::de_trajectory(params, 1.5); }) ==
        ErrorCode::domain_error);
  CHECK(code_of([&] { cpsres::de_trajectory(params, 0.5, -1); }) ==
        ErrorCode::invalid_argument);
  CHECK(code_of([&] { cpsres::de_trajectory(params, 0.5, 100, 0.0); }) ==
        ErrorCode::invalid_argument);
  CHECK(code_of([&] { cpsres::de_trajectory(params, 0.5, 100, 0.5); }) ==
        ErrorCode::invalid_argument);
}

TEST_CASE("reduced map evaluates the cyber polynomial") {
  CHECK(cpsres::one_to_one_step(0.5, z(3)) == doctest::Approx(0.125));
  CHECK(cpsres::one_to_one_step(0.0, mix_dist()) == 0.0);
  const auto half = DegreeDistribution::from_coefficients({{1, 0.5}, {2, 0.5}});
  CHECK(std::fabs(cpsres::one_to_one_step(0.2, half) - 0.12) <= 1e-12);
}

TEST_CASE("reduced trajectories shrink strictly and heal") {
  const auto squares = cpsres::one_to_one_trajectory(z(2), 0.5);
  CHECK(squares.verdict == Verdict::healed);
  REQUIRE(squares.densities.size() >= 4);
  CHECK(squares.densities[0] == 0.5);
  CHECK(squares.densities[1] == 0.25);
  CHECK(squares.densities[2] == 0.0625);
  CHECK(squares.densities[3] == doctest::Approx(0.00390625));

  const auto from_high = cpsres::one_to_one_trajectory(z(3), 0.9);
  CHECK(from_high.verdict == Verdict::healed);
  for (std::size_t i = 1; i < from_high.densities.size(); ++i)
    CHECK(from_high.densities[i] < from_high.densities[i - 1]);

  CHECK(cpsres::one_to_one_trajectory(mix_dist(), 0.0).verdict ==
        Verdict::healed);
  // Everything failed is a fixed point of the reduced map.
  CHECK(cpsres::one_to_one_trajectory(z(2), 1.0).verdict ==
        Verdict::collapsed);
}

TEST_CASE("reduced trajectories shrink for random cyber distributions") {
  cpsres::Rng rng(2024);
  for (int trial = 0; trial < 25; ++trial) {
    auto rho = random_dist(rng, 8);
    // Keep some mass above degree 1 so the map is a strict contraction.
    if (rho.entries().size() == 1 && rho.min_degree() == 1) continue;
    if (rho.min_degree() == 1 && rho.entries().front().second > 0.8) continue;
    const double eps = 0.01 + 0.98 * rng.uniform();
    const auto traj = cpsres::one_to_one_trajectory(rho, eps);
    CHECK(traj.verdict == Verdict::healed);
    for (std::size_t i = 1; i < traj.densities.size(); ++i)
      CHECK(traj.densities[i] < traj.densities[i - 1]);
  }
}

TEST_CASE("healing bound values") {
  CHECK(std::fabs(cpsres::epsilon_s(lossless(3, 0.8, z(2), z(3))) -
                  1.0 / (2 * 2.6 * 2.6)) <= 1e-15);
  CHECK(std::fabs(cpsres::epsilon_s(lossless(3, 0.8, z(2), z(3))) - 0.0740) <=
        1e-4);
  CHECK(std::fabs(cpsres::epsilon_s(lossless(3, 0.5, z(8), z(3))) - 0.02) <=
        1e-15);
  // Degenerate cases cap at 1.
  CHECK(cpsres::epsilon_s(lossless(1, 0.9, z(5), z(3))) == 1.0);
  CHECK(cpsres::epsilon_s(lossless(2, 0.0, z(5), z(3))) == 1.0);
}

TEST_CASE("expansion coefficients") {
  const auto c = cpsres::taylor_coefficients(lossless(3, 0.8, z(2), z(3)));
  CHECK(std::fabs(c.c2 - 13.52) <= 1e-9);
  CHECK(std::fabs(c.c3 - (-40.872)) <= 1e-9);

  const auto flat = cpsres::taylor_coefficients(lossless(2, 0.0, z(1), z(3)));
  CHECK(flat.c2 == 1.0);
  CHECK(flat.c3 == 0.0);

  CHECK(code_of([] {
          cpsres::taylor_coefficients(
              SystemParams(3, 0.8, 0.1, 0.0, 0.0, z(2), z(3)));
        }) == ErrorCode::unsupported_params);
}

TEST_CASE("quadratic coefficient is the reciprocal of the healing bound") {
  cpsres::Rng rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const int a = 2 + static_cast<int>(rng.below(7));
    const auto params =
        lossless(a, rng.uniform(), random_dist(rng, 8), random_dist(rng, 8));
    const double bound = cpsres::epsilon_s(params);
    const double c2 = cpsres::taylor_coefficients(params).c2;
    if (bound < 1.0) {
      CHECK(std::fabs(c2 * bound - 1.0) <= 1e-12);
    } else {
      CHECK(c2 <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("cubic expansion leaves a quartic remainder") {
  const std::vector<SystemParams> sets = {lossless(3, 0.8, z(2), z(3)),
                                          lossless(5, 0.2, z(2), z(3)),
                                          lossless(4, 0.5, mix_dist(), z(3))};
  for (const auto& params : sets) {
    const auto c = cpsres::taylor_coefficients(params);
    auto residual = [&](double x) {
      return std::fabs(cpsres::de_step(x, params) - c.c2 * x * x -
                       c.c3 * x * x * x);
    };
    const double ratio = residual(1e-2) / residual(1e-3);
    CHECK(ratio >= 5e3);
    CHECK(ratio <= 2e4);
  }
}

TEST_CASE("starts below the healing bound always heal") {
  cpsres::Rng rng(4242);
  for (int trial = 0; trial < 25; ++trial) {
    const int a = 2 + static_cast<int>(rng.below(7));
    const auto params =
        lossless(a, rng.uniform(), random_dist(rng, 8), random_dist(rng, 8));
    const double bound = cpsres::epsilon_s(params);
    for (const double scale : {0.3, 0.9, 0.99}) {
      const double eps = scale * bound;
      if (eps >= 1.0) continue;
      CHECK(cpsres::de_trajectory(params, eps).verdict == Verdict::healed);
    }
  }
}

TEST_CASE("verdict names") {
  CHECK(std::string(cpsres::verdict_name(Verdict::healed)) == "healed");
  CHECK(std::string(cpsres::verdict_name(Verdict::collapsed)) == "collapsed");
  CHECK(std::string(cpsres::verdict_name(Verdict::undecided)) == "undecided");
}
