#include <gtest/gtest.h>

#include <map>
#include <vector>

#include "snakelaws/discretesnake.hpp"
#include "snakelaws/stats.hpp"

using namespace snakelaws;
using namespace snakelaws::snake;

namespace {

std::map<DyckPath, std::size_t> index_trees(std::size_t n) {
  std::map<DyckPath, std::size_t> idx;
  for (const auto& t : enumerate_plane_trees(n)) idx.emplace(t.to_dyck(), idx.size());
  return idx;
}

}  // namespace

TEST(PlaneTree, Enumeration) {
  EXPECT_EQ(enumerate_plane_trees(1).size(), 1u);
  EXPECT_EQ(enumerate_plane_trees(3).size(), 5u);
  EXPECT_EQ(enumerate_plane_trees(5).size(), 42u);
  EXPECT_EQ(enumerate_plane_trees(8).size(), 1430u);
  EXPECT_THROW(enumerate_plane_trees(9), SizeError);
  EXPECT_EQ(index_trees(8).size(), 1430u);
}

TEST(PlaneTree, DyckBijection) {
  for (std::size_t n = 1; n <= 8; ++n)
    for (const auto& t : enumerate_plane_trees(n)) {
      const auto path = t.to_dyck();
      ASSERT_EQ(path.size(), 2 * n);
      EXPECT_EQ(PlaneTree::from_dyck(path), t);
      EXPECT_EQ(PlaneTree::from_dyck(path).to_dyck(), path);
    }
}

TEST(PlaneTree, Structure) {
  RngStream rng(1, 1);
  const auto t = sample_plane_tree(500, rng);
  EXPECT_EQ(t.n_vertices(), 501u);
  EXPECT_EQ(t.parent(0), PlaneTree::kNoParent);
  std::size_t child_total = 0;
  for (std::size_t v = 0; v < t.n_vertices(); ++v) {
    for (auto c : t.children(v)) {
      EXPECT_EQ(t.parent(static_cast<std::size_t>(c)), static_cast<std::int32_t>(v));
      EXPECT_GT(static_cast<std::size_t>(c), v);  // preorder numbering: acyclic
    }
    child_total += t.children(v).size();
  }
  EXPECT_EQ(child_total, 500u);
}

TEST(PlaneTree, RejectsInvalidPaths) {
  EXPECT_THROW(PlaneTree::from_dyck(DyckPath{-1, 1}), DomainError);
  EXPECT_THROW(PlaneTree::from_dyck(DyckPath{1, 1}), DomainError);
  EXPECT_THROW(PlaneTree::from_dyck(DyckPath{1}), DomainError);
  EXPECT_THROW(PlaneTree::from_dyck(DyckPath{1, 0}), DomainError);
}

TEST(SamplePlaneTree, SingleEdge) {
  RngStream rng(2, 2);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(sample_plane_tree(1, rng).to_dyck(), (DyckPath{1, -1}));
  EXPECT_THROW(sample_plane_tree(0, rng), DomainError);
}

TEST(SamplePlaneTree, FrequenciesAtThreeEdges) {
  const auto idx = index_trees(3);
  std::vector<std::size_t> counts(idx.size(), 0);
  RngStream rng(3, 3);
  const std::size_t n = 100000;
  for (std::size_t i = 0; i < n; ++i) ++counts[idx.at(sample_dyck_path(3, rng))];
  const double p = 0.2, se = std::sqrt(p * (1 - p) / n);
  for (auto c : counts) EXPECT_NEAR(static_cast<double>(c) / n, p, 4 * se);
}

TEST(SamplePlaneTree, ChiSquareUniform) {
  for (std::size_t edges : {3u, 5u, 8u}) {
    const auto idx = index_trees(edges);
    std::vector<std::size_t> counts(idx.size(), 0);
    RngStream rng(4, edges);
    for (std::size_t i = 0; i < 1'000'000; ++i) ++counts[idx.at(sample_dyck_path(edges, rng))];
    EXPECT_GT(snakelaws::stats::chi_square_uniform(counts).p_value, 0.001) << edges;
  }
}

TEST(Labels, Stats) {
  RngStream rng(5, 5);
  const auto t = sample_plane_tree(40, rng);
  const std::vector<std::int32_t> zeros(40, 0);
  const auto s0 = snake::stats(label_with_increments(t, zeros));
  EXPECT_EQ(s0.zero_count, 41u);
  EXPECT_EQ(s0.pos_count + s0.neg_count, 0u);

  DyckPath line;
  for (int i = 0; i < 10; ++i) line.push_back(1);
  for (int i = 0; i < 10; ++i) line.push_back(-1);
  const std::vector<std::int32_t> ups(10, 1);
  const auto s1 = snake::stats(label_with_increments(PlaneTree::from_dyck(line), ups));
  EXPECT_EQ(s1.zero_count, 1u);
  EXPECT_EQ(s1.pos_count, 10u);
  EXPECT_THROW(label_with_increments(t, std::vector<std::int32_t>(40, 2)), DomainError);
  EXPECT_THROW(label_with_increments(t, std::vector<std::int32_t>(3, 0)), DomainError);

  const auto lt = assign_labels(t, rng);
  EXPECT_EQ(lt.labels[0], 0);
  for (std::size_t v = 1; v < lt.labels.size(); ++v)
    EXPECT_LE(std::abs(lt.labels[v] - lt.labels[static_cast<std::size_t>(t.parent(v))]), 1);
  const auto s = snake::stats(lt);
  EXPECT_EQ(s.zero_count + s.pos_count + s.neg_count, 41u);
}

TEST(Labels, ExactSmallMeans) {
  EXPECT_EQ(exact_mean_zero_count(1), BigRational(4, 3));
  EXPECT_THROW(exact_mean_zero_count(7), SizeError);
  for (std::size_t n = 1; n <= 4; ++n) {
    RngStream rng(6, n);
    std::vector<double> z(200000);
    for (auto& x : z) x = static_cast<double>(snake::stats(assign_labels(sample_plane_tree(n, rng), rng)).zero_count);
    const auto m = snakelaws::stats::mean_estimate(z);
    EXPECT_NEAR(m.mean, exact_mean_zero_count(n).to_double(), 4 * m.std_error) << n;
  }
}

TEST(Labels, SignSymmetry) {
  RngStream rng(7, 7);
  const std::size_t n = 20000;
  std::vector<double> pos(n), neg(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto t = sample_plane_tree(30, rng);
    std::vector<std::int32_t> inc(30);
    for (auto& x : inc) x = static_cast<std::int32_t>(rng.below(3)) - 1;
    const auto a = snake::stats(label_with_increments(t, inc));
    for (auto& x : inc) x = -x;
    const auto b = snake::stats(label_with_increments(t, inc));
    EXPECT_EQ(a.pos_count, b.neg_count);
    EXPECT_EQ(a.neg_count, b.pos_count);
    EXPECT_EQ(a.zero_count, b.zero_count);
    pos[i] = static_cast<double>(a.pos_count);
    neg[i] = static_cast<double>(a.neg_count);
  }
  EXPECT_LE(snakelaws::stats::ks_two_sample(pos, neg), 0.03);
}

TEST(Rescaling, Constants) {
  EXPECT_NEAR(zero_count_limit_factor(), std::pow(8.0 / 9.0, -0.25), 1e-15);
  SnakeStats s{16, 8, 5, 4};
  EXPECT_DOUBLE_EQ(rescaled_zero_count(s), 1.0);
  EXPECT_DOUBLE_EQ(positive_fraction(s), 9.0 / 17.0);
  EXPECT_DOUBLE_EQ(strict_positive_fraction(s), 5.0 / 17.0);
}

TEST(Rescaling, LimitConstantAtModerateSize) {
  // 2000 trees with 2000 edges: the mean of n^{-3/4} #S_n is within 3% of
  // the limit 3^{1/2} 2^{-3/4} E[L^0]; the factor 2^{-1/4} 3^{-1/2} is off by 3/sqrt2.
  RngStream root(8, 8);
  std::vector<double> z(2000);
  for (std::size_t i = 0; i < z.size(); ++i) {
    RngStream rng = root.split(i);
    z[i] = rescaled_zero_count(snake::stats(assign_labels(sample_plane_tree(2000, rng), rng)));
  }
  const double limit = zero_count_limit_factor() * 0.5813683170191186;
  const auto m = snakelaws::stats::mean_estimate(z);
  EXPECT_NEAR(m.mean, limit, 0.03 * limit);
  EXPECT_GT(std::abs(m.mean - std::pow(2.0, -0.25) / std::sqrt(3.0) * 0.5813683170191186), 0.5 * limit);
}

TEST(PositiveFraction, SymmetricAroundHalf) {
  RngStream root(9, 9);
  std::vector<double> f(4000);
  for (std::size_t i = 0; i < f.size(); ++i) {
    RngStream rng = root.split(i);
    f[i] = positive_fraction(snake::stats(assign_labels(sample_plane_tree(500, rng), rng)));
  }
  const auto m = snakelaws::stats::mean_estimate(f);
  EXPECT_NEAR(m.mean, 0.5, 4 * m.std_error);
}
