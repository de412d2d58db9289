#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "snakelaws/exact_series.hpp"
#include "snakelaws/exactlaws.hpp"
#include "snakelaws/rng.hpp"
#include "snakelaws/samplers.hpp"
#include "snakelaws/stats.hpp"

using namespace snakelaws;
using namespace snakelaws::samplers;

namespace {

constexpr std::size_t kN = 1'000'000;

void expect_within_se(const stats::MeanEstimate& m, double theory, double k = 4.0) {
  EXPECT_NEAR(m.mean, theory, k * m.std_error) << "se " << m.std_error;
}

template <typename Draw>
std::vector<double> draws(std::size_t n, std::uint64_t stream, Draw d) {
  return sample_batch("t", n, 2024, stream, d).values;
}

}  // namespace

TEST(Rng, Reproducible) {
  RngStream a(5, 9), b(5, 9), c(5, 10);
  bool differs = false;
  for (int i = 0; i < 1000; ++i) {
    const auto x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    differs |= x != c.next_u64();
  }
  EXPECT_TRUE(differs);
  RngStream d(5, 9), e(5, 9);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(sample_stable_two_thirds(d), sample_stable_two_thirds(e));
    EXPECT_EQ(d.normal(), e.normal());
  }
}

TEST(Rng, UniformOpenAndBelow) {
  RngStream r(1, 1);
  for (int i = 0; i < 100000; ++i) {
    const double u = r.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    ASSERT_LT(r.below(7), 7u);
  }
}

TEST(Rng, SplitIsIndependentOfScheduling) {
  const RngStream root(3, 4);
  RngStream s1 = root.split(2);
  RngStream s2 = RngStream(3, 4).split(2);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(s1.next_u64(), s2.next_u64());
  const auto a = sample_batch("u", 5000, 8, 1, [](RngStream& r) { return r.uniform(); }, 1000);
  const auto b = sample_batch("u", 5000, 8, 1, [](RngStream& r) { return r.uniform(); }, 1000);
  EXPECT_EQ(a.values, b.values);
}

TEST(Stable, LaplaceGates) {
  const auto t = draws(kN, 1, [](RngStream& r) { return sample_stable_two_thirds(r); });
  expect_within_se(stats::mean_of(t, [](double x) { return std::exp(-x); }), std::exp(-1.0));
  expect_within_se(stats::mean_of(t, [](double x) { return std::exp(-2.0 * x); }), std::exp(-std::pow(2.0, 2.0 / 3.0)));
  expect_within_se(stats::mean_of(t, [](double x) { return std::exp(-8.0 * x); }), std::exp(-4.0));
  for (double x : t) ASSERT_GT(x, 0.0);
}

TEST(Stable, OtherIndex) {
  const auto t = draws(200000, 2, [](RngStream& r) { return sample_positive_stable(0.5, r); });
  expect_within_se(stats::mean_of(t, [](double x) { return std::exp(-x); }), std::exp(-1.0));
  RngStream r(1, 1);
  EXPECT_THROW(sample_positive_stable(1.0, r), DomainError);
  EXPECT_THROW(sample_positive_stable(0.0, r), DomainError);
}

TEST(D, Moments) {
  const auto d = draws(kN, 3, [](RngStream& r) { return sample_D(r); });
  expect_within_se(stats::mean_estimate(d), 2.0 / 3.0);
  expect_within_se(stats::mean_of(d, [](double x) { return x * x; }), 0.5);
  for (double x : d) ASSERT_TRUE(x >= 0.0 && x <= 1.0);
}

TEST(LtGivenSigma, MomentsAndScaling) {
  const auto l = draws(kN, 4, [](RngStream& r) { return sample_lt_given_sigma(1.0, r); });
  expect_within_se(stats::mean_estimate(l), 0.5813683170191186, 4.0);
  expect_within_se(stats::mean_of(l, [](double x) { return x * x; }), series::conditional_moment(2, series::Conditioning::sigma));
  RngStream a(9, 9), b(9, 9);
  for (int i = 0; i < 1000; ++i) {
    const double s = 0.1 + 0.01 * i;
    EXPECT_DOUBLE_EQ(sample_lt_given_sigma(s, a), std::pow(s, 0.75) * sample_lt_given_sigma(1.0, b));
  }
  EXPECT_THROW(sample_lt_given_sigma(0.0, a), DomainError);
}

TEST(LtGivenSigmaPlus, Moments) {
  const auto l = draws(kN, 5, [](RngStream& r) { return sample_lt_given_sigma_plus(1.0, r); });
  expect_within_se(stats::mean_estimate(l), series::conditional_moment(1, series::Conditioning::sigma_plus));
  expect_within_se(stats::mean_of(l, [](double x) { return x * x; }), series::conditional_moment(2, series::Conditioning::sigma_plus));
  RngStream r(1, 1);
  EXPECT_THROW(sample_lt_given_sigma_plus(-1.0, r), DomainError);
}

TEST(LtGivenSigmaPlus, IndependentSubstreams) {
  const std::size_t n = 100000;
  RngStream d_rng = RngStream(11, 0).split(0), t_rng = RngStream(11, 0).split(1);
  std::vector<double> d(n), t(n);
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = sample_D(d_rng);
    t[i] = 1.0 / std::sqrt(sample_stable_two_thirds(t_rng));
  }
  EXPECT_LE(std::abs(stats::correlation(d, t)), 4.0 / std::sqrt(static_cast<double>(n)));
}

TEST(StableGuard, CountsRedraws) {
  RngStream r(1, 2);
  std::uint64_t redraws = 0;
  for (int i = 0; i < 10000; ++i) EXPECT_GE(samplers::detail::stable_two_thirds_guarded(r, &redraws), samplers::detail::kStableFloor);
  EXPECT_EQ(redraws, 0u);
}

TEST(U, LaplaceGates) {
  const auto u = draws(kN, 6, [](RngStream& r) { return sample_U(r); });
  expect_within_se(stats::mean_of(u, [](double x) { return std::exp(-x / 2.0); }), 2.0 * std::exp(-1.0));
  expect_within_se(stats::mean_of(u, [](double x) { return std::exp(-x); }), (1.0 + std::sqrt(2.0)) * std::exp(-std::sqrt(2.0)));
}

TEST(SbmTotalLt, LaplaceGate) {
  const auto l = draws(kN, 7, [](RngStream& r) { return sample_sbm_total_lt(1.0, r); });
  expect_within_se(stats::mean_of(l, [](double x) { return std::exp(-x); }), laws::sbm_local_time_laplace(1.0, 0.0, 1.0));
  RngStream r(1, 1);
  EXPECT_THROW(sample_sbm_total_lt(0.0, r), DomainError);
}

TEST(SpectrallyPositive, LaplaceMeanAndScaling) {
  const auto x = draws(kN, 8, [](RngStream& r) { return sample_spectrally_positive_increment(0.01, r); });
  expect_within_se(stats::mean_of(x, [](double v) { return std::exp(-v); }), std::exp(0.01 * std::sqrt(8.0 / 3.0)));
  expect_within_se(stats::mean_estimate(x), 0.0);
  const auto big = draws(100000, 9, [](RngStream& r) { return sample_spectrally_positive_increment(0.04, r); });
  auto small = draws(100000, 10, [](RngStream& r) { return sample_spectrally_positive_increment(0.01, r); });
  for (auto& v : small) v *= std::pow(4.0, 2.0 / 3.0);
  EXPECT_LE(stats::ks_two_sample(big, small), 0.01);
  RngStream r(1, 1);
  EXPECT_THROW(sample_spectrally_positive_increment(0.0, r), DomainError);
}

TEST(Stats, KolmogorovSmirnov) {
  const std::vector<double> a{1, 2, 3, 4}, b{10, 11, 12};
  EXPECT_EQ(stats::ks_two_sample(a, a), 0.0);
  EXPECT_EQ(stats::ks_two_sample(a, b), 1.0);
  EXPECT_THROW(stats::ks_two_sample(a, std::vector<double>{}), InputError);
  const auto d1 = draws(10000, 12, [](RngStream& r) { return sample_D(r); });
  const auto d2 = draws(10000, 13, [](RngStream& r) { return sample_D(r); });
  EXPECT_LE(stats::ks_two_sample(d1, d2), 0.03);
  EXPECT_LE(stats::ks_one_sample(d1, [](double x) { return x * x; }), 0.03);
}

TEST(Stats, ChiSquare) {
  const std::vector<std::size_t> flat{100, 100, 100, 100};
  EXPECT_EQ(stats::chi_square_uniform(flat).statistic, 0.0);
  EXPECT_NEAR(stats::chi_square_uniform(flat).p_value, 1.0, 1e-12);
  const std::vector<std::size_t> skew{400, 0, 0, 0};
  EXPECT_LT(stats::chi_square_uniform(skew).p_value, 1e-10);
}
