#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "snakelaws/exactlaws.hpp"
#include "snakelaws/quadrature.hpp"

using namespace snakelaws;
using namespace snakelaws::laws;

namespace {
const double kSqrt2 = std::numbers::sqrt2;
const double kGrid[] = {0.1, 0.5, 1.0, 2.0, 5.0, 10.0};
}  // namespace

TEST(Quadrature, KnownIntegrals) {
  EXPECT_NEAR(quadrature::integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi).value, 2.0, 1e-13);
  EXPECT_NEAR(quadrature::integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0).value, 2.0, 1e-9);
  const auto gauss = quadrature::integrate_half_line([](double x) { return std::exp(-x * x); }, quadrature::PowerMap{1, 1});
  EXPECT_NEAR(gauss.value, std::sqrt(std::numbers::pi) / 2.0, 1e-11);
  EXPECT_THROW(quadrature::integrate([](double x) { return 1.0 / x; }, 0.0, 1.0, quadrature::Tolerance{1e-14, 1e-14, 50}), NumericError);
}

TEST(DurationLaplace, Examples) {
  EXPECT_EQ(duration_laplace(0.0), 0.0);
  EXPECT_DOUBLE_EQ(duration_laplace(2.0), 1.0);
  EXPECT_DOUBLE_EQ(duration_laplace(1.0), 0.7071067811865476);
  EXPECT_THROW(duration_laplace(-1.0), DomainError);
  EXPECT_THROW(duration_laplace(NAN), DomainError);
}

TEST(LocalTimeLaplace, Examples) {
  EXPECT_EQ(local_time_laplace(0.0), 0.0);
  EXPECT_NEAR(local_time_laplace(1.0), 0.7211247851537042, 1e-15);
  EXPECT_NEAR(local_time_laplace(8.0), 2.8844991406148167, 1e-14);
  EXPECT_THROW(local_time_laplace(-1.0), DomainError);
}

TEST(LocalTimeDensity, Examples) {
  EXPECT_NEAR(local_time_density(1.0), std::pow(3.0, -2.0 / 3.0) / 2.678938534707747, 1e-15);
  EXPECT_NEAR(local_time_density(1.0), 0.17945, 1e-5);
  EXPECT_THROW(local_time_density(0.0), DomainError);
  EXPECT_NEAR(local_time_laplace_by_quadrature(1.0), local_time_laplace(1.0), 1e-6);
}

TEST(HMu, Examples) {
  EXPECT_NEAR(h_mu(1.0, 0.5, 0.5), 2.0 * kSqrt2, 1e-14);
  for (double v : kGrid) EXPECT_NEAR(h_mu(v, 0.0, 0.0), 4.0 * std::pow(v, 1.5), 1e-12 * std::pow(v, 1.5));
  for (double m1 : kGrid)
    for (double m2 : kGrid) EXPECT_NEAR(h_mu(pair_laplace(m1, m2), m1, m2), 0.0, 1e-12 * (1.0 + m1 + m2));
}

TEST(SolveTriple, Examples) {
  EXPECT_NEAR(solve_triple({2.0 / std::sqrt(3.0), 0.5, 0.5}).value, 1.0, 1e-12);
  EXPECT_NEAR(solve_triple({0.0, 4.0, 1.0}).value, pair_laplace(4.0, 1.0), 1e-12);
  EXPECT_NEAR(solve_triple({1.0, 0.0, 0.0}).value, std::cbrt(3.0 / 8.0), 1e-12);
  EXPECT_NEAR(solve_triple({1.0, 0.0, 0.0}).value, local_time_laplace(1.0), 1e-12);
  EXPECT_THROW(solve_triple({NAN, 1.0, 1.0}), std::exception);
  EXPECT_THROW(solve_triple({-1.0, 1.0, 1.0}), DomainError);
}

TEST(SolveTriple, AgreesWithClosedFormOnGrid) {
  for (double l : kGrid)
    for (double m : kGrid) {
      const double closed = lt_sigma_laplace(l, m);
      EXPECT_NEAR(solve_triple({l, m, m}).value, closed, 1e-10 * closed) << l << "," << m;
    }
}

TEST(SolveTriple, MonotoneInEachRate) {
  for (int i = 0; i + 1 < 6; ++i)
    for (double x : kGrid) {
      EXPECT_LE(solve_triple({kGrid[i], x, x}).value, solve_triple({kGrid[i + 1], x, x}).value);
      EXPECT_LE(solve_triple({x, kGrid[i], x}).value, solve_triple({x, kGrid[i + 1], x}).value);
      EXPECT_LE(solve_triple({x, x, kGrid[i]}).value, solve_triple({x, x, kGrid[i + 1]}).value);
    }
}

TEST(LtSigmaLaplace, Examples) {
  for (double m : kGrid) EXPECT_NEAR(lt_sigma_laplace(0.0, m), duration_laplace(m), 1e-14);
  EXPECT_NEAR(lt_sigma_laplace(2.0 / std::sqrt(3.0), 0.5), 1.0, 1e-12);
  EXPECT_THROW(lt_sigma_laplace(1.0, 0.0), DomainError);
  const double l1 = 2.0 / std::sqrt(3.0);
  EXPECT_NEAR(lt_sigma_laplace(l1 * (1 - 1e-8), 0.5), lt_sigma_laplace(l1 * (1 + 1e-8), 0.5), 1e-7);
}

TEST(PairLaplace, Examples) {
  EXPECT_NEAR(pair_laplace(1.0, 1.0), 0.7071067811865476, 1e-15);
  EXPECT_NEAR(pair_laplace(4.0, 1.0), 1.0999438818457406, 1e-14);
  EXPECT_NEAR(pair_laplace(1.0, 4.0), 1.0999438818457406, 1e-14);
  for (double m : kGrid) EXPECT_NEAR(pair_laplace(m, 0.0), kSqrt2 / 3.0 * std::sqrt(m), 1e-14);
  EXPECT_NEAR(pair_laplace(1.0, 1.0 + 1e-12), pair_laplace(1.0, 1.0), 1e-11);
  EXPECT_THROW(pair_laplace(-1.0, 1.0), DomainError);
}

TEST(PairDensity, Examples) {
  EXPECT_NEAR(pair_density(0.5, 0.5), 0.19947114020071635, 1e-16);
  EXPECT_THROW(pair_density(0.0, 1.0), DomainError);
  EXPECT_NEAR(pair_laplace_by_quadrature(1.0, 1.0), pair_laplace(1.0, 1.0), 1e-5);
  EXPECT_NEAR(pair_laplace_by_quadrature(4.0, 1.0), pair_laplace(4.0, 1.0), 1e-5);
}

TEST(ExitLaplace, Examples) {
  EXPECT_DOUBLE_EQ(exit_laplace(1.0, 0.0), 1.0);
  EXPECT_NEAR(exit_laplace(1e16, 1.0), 1.5, 1e-6);
  EXPECT_NEAR(exit_laplace(4.0, 1.0), std::pow(0.5 + std::sqrt(2.0 / 3.0), -2.0), 1e-15);
  EXPECT_NEAR(exit_laplace(4.0, 1.0), 0.5769797, 1e-7);
  EXPECT_THROW(exit_laplace(0.0, 1.0), DomainError);
}

TEST(HittingProb, Examples) {
  EXPECT_DOUBLE_EQ(hitting_prob(1.0), 1.5);
  EXPECT_DOUBLE_EQ(hitting_prob(2.0), 0.375);
  EXPECT_THROW(hitting_prob(0.0), DomainError);
}

TEST(LtLevelLaplace, Examples) {
  for (double l : kGrid) EXPECT_NEAR(lt_level_laplace(l, 0.0), local_time_laplace(l), 1e-14);
  EXPECT_NEAR(lt_level_laplace(1e18, 1.0), 1.5, 1e-5);
  const double c = std::cbrt(3.0) / 2.0;
  EXPECT_NEAR(lt_level_laplace(1.0, 1.0), c * std::pow(1.0 + std::pow(3.0, -1.0 / 3.0), -2.0), 1e-15);
  EXPECT_NEAR(lt_level_laplace(1.0, 1.0), 0.2514845, 1e-7);
  EXPECT_NEAR(lt_level_laplace(1.0, -1.0), lt_level_laplace(1.0, 1.0), 1e-15);
  EXPECT_THROW(lt_level_laplace(0.0, 1.0), DomainError);
}

TEST(SuperBrownian, Examples) {
  EXPECT_NEAR(sbm_local_time_laplace(1.0, 0.0, 1.0), 0.4862050720388001, 1e-14);
  EXPECT_NEAR(sbm_local_time_laplace(1.0, 0.5, 1e-300), 1.0, 1e-15);
  EXPECT_THROW(sbm_local_time_laplace(1.0, 0.0, 0.0), DomainError);
  EXPECT_NEAR(sbm_pair_laplace(1.0, 1.0, 1.0), 0.4930686913952398, 1e-14);
  for (double m : kGrid) EXPECT_NEAR(sbm_pair_laplace(m, m, 2.0), std::exp(-2.0 * std::sqrt(m / 2.0)), 1e-14);
  EXPECT_NEAR(sbm_pair_laplace(4.0, 1.0, 3.0), std::exp(-7.0 * kSqrt2 / 3.0), 1e-15);
  EXPECT_NEAR(sbm_pair_laplace(4.0, 1.0, 3.0), 0.0368893773697967, 1e-15);
}

TEST(Y0Z0Laplace, Examples) {
  EXPECT_NEAR(y0_z0_laplace(1e-300, 2.0, 3.0), 3.0, 1e-12);
  EXPECT_NEAR(y0_z0_laplace(0.7, 2.0, 1.0), 1.0, 1e-15);
  EXPECT_NEAR(y0_z0_laplace(1e3, 2.0, 3.0), 1.0, 1e-12);
  EXPECT_THROW(y0_z0_laplace(1.0, 2.0, 0.5), DomainError);
  for (double x : {0.1, 1.0, 3.0}) EXPECT_NEAR(lt_sigma_laplace_from_x(x, 0.0, 2.0), 1.0, 1e-15);
  EXPECT_NEAR(lt_sigma_laplace_from_x(1e-300, 2.0, 1.5), lt_sigma_laplace(2.0, 1.5), 1e-12);
}

TEST(ExcursionSignKernel, Examples) {
  EXPECT_DOUBLE_EQ(excursion_sign_kernel(0.0, 0.0, 2.0), 1.0);
  for (double m : {0.5, 1.0, 3.0}) {
    const double r = std::sqrt(2.0 * m * 1.5);
    EXPECT_NEAR(excursion_sign_kernel(m, m, 1.5), (1.0 + r) * std::exp(-r), 1e-14);
  }
  EXPECT_NEAR(excursion_sign_kernel(0.5, 0.0, 1.0), 0.5 * (2.0 * std::exp(-1.0) + 1.0), 1e-15);
  EXPECT_THROW(excursion_sign_kernel(-1.0, 0.0, 1.0), DomainError);
}

TEST(BranchingMechanism, QuadratureDual) {
  for (double v : {0.5, 1.0, 2.0}) {
    EXPECT_NEAR(phi_by_quadrature(v), std::sqrt(8.0 / 3.0) * std::pow(v, 1.5), 1e-6);
    EXPECT_NEAR(verify_h_integral(v, 0.0, 0.0), 0.0, 1e-6);
  }
  EXPECT_NEAR(verify_h_integral(1.0, 0.5, 0.5), 0.0, 1e-6);
  EXPECT_NEAR(verify_h_integral(2.0, 1.0, 4.0), 0.0, 1e-6);
}
