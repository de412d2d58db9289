#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "snakelaws/levycsbp.hpp"
#include "snakelaws/stats.hpp"

using namespace snakelaws;
using namespace snakelaws::levy;

TEST(PathConfig, Validation) {
  RngStream rng(1, 1);
  EXPECT_THROW(simulate_hitting_time(PathConfig{0.0, 1.0, 1.0, 0.0}, rng), DomainError);
  EXPECT_THROW(simulate_hitting_time(PathConfig{2.0, 1.0, 1.0, 0.0}, rng), DomainError);
  EXPECT_THROW(simulate_hitting_time(PathConfig{1e-3, 1.0, 0.0, 0.0}, rng), DomainError);
}

TEST(HittingTime, CensoringInvariant) {
  RngStream rng(2, 2);
  const PathConfig cfg{1e-3, 0.5, 1.0, 0.0};
  std::size_t censored = 0;
  for (int i = 0; i < 2000; ++i) {
    const auto h = simulate_hitting_time(cfg, rng);
    if (h.censored) {
      EXPECT_EQ(h.t0, cfg.t_max);
      ++censored;
    } else {
      EXPECT_GT(h.t0, 0.0);
      EXPECT_LE(h.t0, cfg.t_max);
    }
  }
  EXPECT_GT(censored, 0u);
}

TEST(HittingTime, StartNearBoundary) {
  RngStream rng(3, 3);
  const PathConfig cfg{1e-5, 100.0, 1e-3, 10.0};
  std::vector<double> x(5000);
  for (auto& v : x) v = std::exp(-simulate_hitting_time(cfg, rng).t0);
  EXPECT_GT(stats::mean_estimate(x).mean, 0.98);
}

TEST(HittingTime, LaplaceAtSmallScale) {
  // 2e4 adaptive paths; the full 1e5-path gate is part of the acceptance run.
  RngStream root(4, 4);
  const PathConfig cfg{1e-4, 100.0, 1.0, 10.0};
  std::vector<double> t(20000);
  for (std::size_t i = 0; i < t.size(); ++i) {
    RngStream rng = root.split(i);
    t[i] = simulate_hitting_time(cfg, rng).t0;
  }
  const double mean = stats::mean_of(t, [](double v) { return std::exp(-v); }).mean;
  EXPECT_NEAR(mean, std::exp(-std::cbrt(3.0 / 8.0)), 0.02);
}

TEST(Levels, NestedGridsAreOrdered) {
  RngStream rng(5, 5);
  const PathConfig cfg{4e-3, 20.0, 1.0, 0.0};
  for (int i = 0; i < 300; ++i) {
    const auto h = simulate_hitting_time_levels(cfg, 3, rng);
    ASSERT_EQ(h.size(), 3u);
    // The coarse grid sees a subset of the fine grid's times, so its
    // first observed crossing step can only come later.
    EXPECT_GE(h[0].t0 + 4e-3, h[2].t0);
  }
  EXPECT_THROW(simulate_hitting_time_levels(cfg, 0, rng), DomainError);
}

TEST(Lamperti, PerPathIdentity) {
  RngStream root(6, 6);
  const PathConfig cfg{1e-4, 100.0, 1.0, 0.0};
  double worst = 0.0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < 50; ++i) {
    RngStream rng = root.split(i);
    const auto p = simulate_path(cfg, rng);
    if (p.hit.censored) {
      EXPECT_THROW(lamperti_check(p), DomainError);
      continue;
    }
    const auto c = lamperti_check(p);
    EXPECT_TRUE(c.nonnegative);
    EXPECT_TRUE(c.absorbed);
    worst = std::max(worst, c.rel_deviation);
    ++used;
  }
  EXPECT_GT(used, 40u);
  EXPECT_LE(worst, 0.01);
}

TEST(Lamperti, GridExhaustion) {
  RngStream rng(7, 7);
  const auto p = simulate_path(PathConfig{1e-4, 100.0, 1.0, 0.0}, rng);
  if (!p.hit.censored) EXPECT_THROW(lamperti_check(p, 4.0, 1), NumericError);
}

TEST(TailBound, BoundsExactTail) {
  EXPECT_LE(stable_two_thirds_tail_bound(1.0), 1.0);
  EXPECT_LT(stable_two_thirds_tail_bound(1000.0), stable_two_thirds_tail_bound(10.0));
  RngStream rng(8, 8);
  std::vector<double> t(200000);
  for (auto& v : t) v = samplers::sample_stable_two_thirds(rng);
  for (double c : {1.0, 10.0, 100.0}) {
    double tail = 0.0;
    for (double v : t) tail += v > c ? 1.0 : 0.0;
    EXPECT_LE(tail / static_cast<double>(t.size()), stable_two_thirds_tail_bound(c) + 0.005) << c;
  }
  EXPECT_THROW(stable_two_thirds_tail_bound(0.0), DomainError);
}
