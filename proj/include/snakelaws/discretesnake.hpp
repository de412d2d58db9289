#pragma once

// Uniform labeled plane trees: the discrete snake whose zero-label count,
// rescaled by n^(-3/4), approximates the ISE local time at 0.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "snakelaws/bigrational.hpp"
#include "snakelaws/errors.hpp"
#include "snakelaws/rng.hpp"

namespace snakelaws::snake {

/// Up (+1) / down (-1) steps of a Dyck path of length 2n.
using DyckPath = std::vector<std::int8_t>;

/// Rooted plane tree. Vertices are numbered in depth-first (preorder) order,
/// the root is vertex 0 and children lists keep their left-to-right order.
class PlaneTree {
 public:
  static constexpr std::int32_t kNoParent = -1;

  /// Builds the tree whose contour is `path`; throws if `path` is not a Dyck path.
  static PlaneTree from_dyck(std::span<const std::int8_t> path) {
    if (path.empty() || path.size() % 2 != 0) throw DomainError("PlaneTree::from_dyck: path length must be even and positive");
    PlaneTree t;
    const std::size_t n = path.size() / 2;
    t.parent_.assign(n + 1, kNoParent);
    std::int32_t current = 0, next = 1;
    for (auto step : path) {
      if (step == 1) {
        if (next > static_cast<std::int32_t>(n)) throw DomainError("PlaneTree::from_dyck: too many up steps");
        t.parent_[static_cast<std::size_t>(next)] = current;
        current = next++;
      } else if (step == -1) {
        if (current == 0) throw DomainError("PlaneTree::from_dyck: path goes below zero");
        current = t.parent_[static_cast<std::size_t>(current)];
      } else {
        throw DomainError("PlaneTree::from_dyck: steps must be +1 or -1");
      }
    }
    if (current != 0 || next != static_cast<std::int32_t>(n + 1)) throw DomainError("PlaneTree::from_dyck: path does not return to zero");
    t.build_children();
    return t;
  }

  std::size_t n_edges() const { return parent_.size() - 1; }
  std::size_t n_vertices() const { return parent_.size(); }
  std::int32_t parent(std::size_t v) const { return parent_.at(v); }
  std::span<const std::int32_t> parents() const { return parent_; }
  std::span<const std::int32_t> children(std::size_t v) const {
    return std::span<const std::int32_t>(child_list_).subspan(child_offset_.at(v), child_offset_.at(v + 1) - child_offset_[v]);
  }

  /// Contour (Dyck) path: up when entering a child, down when returning.
  DyckPath to_dyck() const {
    DyckPath path;
    path.reserve(2 * n_edges());
    std::vector<std::size_t> stack{0};
    std::vector<std::size_t> pos(n_vertices(), 0);
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      const auto kids = children(v);
      if (pos[v] < kids.size()) {
        path.push_back(1);
        stack.push_back(static_cast<std::size_t>(kids[pos[v]++]));
      } else {
        stack.pop_back();
        if (!stack.empty()) path.push_back(-1);
      }
    }
    return path;
  }

  friend bool operator==(const PlaneTree& a, const PlaneTree& b) { return a.parent_ == b.parent_; }

 private:
  void build_children() {
    const std::size_t nv = parent_.size();
    child_offset_.assign(nv + 1, 0);
    for (std::size_t v = 1; v < nv; ++v) ++child_offset_[static_cast<std::size_t>(parent_[v]) + 1];
    for (std::size_t v = 0; v < nv; ++v) child_offset_[v + 1] += child_offset_[v];
    child_list_.assign(nv - 1, 0);
    std::vector<std::size_t> fill(child_offset_.begin(), child_offset_.end() - 1);
    // Increasing v visits each parent's children left to right.
    for (std::size_t v = 1; v < nv; ++v) child_list_[fill[static_cast<std::size_t>(parent_[v])]++] = static_cast<std::int32_t>(v);
  }

  std::vector<std::int32_t> parent_;
  std::vector<std::size_t> child_offset_;
  std::vector<std::int32_t> child_list_;
};

/// Plane tree with integer labels; root label 0 and adjacent labels differ by at most 1.
struct LabeledTree {
  PlaneTree tree;
  std::vector<std::int32_t> labels;
};

struct SnakeStats {
  std::size_t n_edges = 0;
  std::size_t zero_count = 0;
  std::size_t pos_count = 0;
  std::size_t neg_count = 0;
};

/// Uniform Dyck path of length 2n: shuffle n up and n + 1 down steps, rotate
/// to start just after the first minimum of the partial sums (cycle lemma)
/// and drop the final down step.
inline DyckPath sample_dyck_path(std::size_t n, RngStream& rng) {
  if (n < 1) throw DomainError("sample_dyck_path: n must be >= 1");
  const std::size_t len = 2 * n + 1;
  DyckPath steps(len, -1);
  std::fill_n(steps.begin(), n, 1);
  for (std::size_t i = len - 1; i > 0; --i) std::swap(steps[i], steps[rng.below(i + 1)]);
  long sum = 0, best = 1;
  std::size_t argmin = 0;
  for (std::size_t k = 0; k < len; ++k) {
    sum += steps[k];
    if (sum < best) {
      best = sum;
      argmin = k;
    }
  }
  DyckPath path(2 * n);
  for (std::size_t j = 0; j < 2 * n; ++j) path[j] = steps[(argmin + 1 + j) % len];
  return path;
}

/// Uniform plane tree with n edges.
inline PlaneTree sample_plane_tree(std::size_t n, RngStream& rng) { return PlaneTree::from_dyck(sample_dyck_path(n, rng)); }

namespace detail {
inline void enumerate_dyck(std::size_t n, DyckPath& prefix, long height, std::vector<PlaneTree>& out) {
  const std::size_t ups = static_cast<std::size_t>(std::count(prefix.begin(), prefix.end(), std::int8_t{1}));
  if (prefix.size() == 2 * n) {
    out.push_back(PlaneTree::from_dyck(prefix));
    return;
  }
  if (ups < n) {
    prefix.push_back(1);
    enumerate_dyck(n, prefix, height + 1, out);
    prefix.pop_back();
  }
  if (height > 0) {
    prefix.push_back(-1);
    enumerate_dyck(n, prefix, height - 1, out);
    prefix.pop_back();
  }
}
}  // namespace detail

/// Every plane tree with n edges, 1 <= n <= 8, each exactly once.
inline std::vector<PlaneTree> enumerate_plane_trees(std::size_t n) {
  if (n < 1) throw DomainError("enumerate_plane_trees: n must be >= 1");
  if (n > 8) throw SizeError("enumerate_plane_trees: n must be <= 8");
  std::vector<PlaneTree> out;
  DyckPath prefix;
  detail::enumerate_dyck(n, prefix, 0, out);
  return out;
}

/// Root label 0; i.i.d. uniform {-1, 0, +1} increments along every edge,
/// drawn in preorder.
inline LabeledTree assign_labels(PlaneTree tree, RngStream& rng) {
  std::vector<std::int32_t> labels(tree.n_vertices(), 0);
  for (std::size_t v = 1; v < labels.size(); ++v)
    labels[v] = labels[static_cast<std::size_t>(tree.parent(v))] + static_cast<std::int32_t>(rng.below(3)) - 1;
  return {std::move(tree), std::move(labels)};
}

/// Labels from explicit per-edge increments (increments[v - 1] is the edge above v).
inline LabeledTree label_with_increments(PlaneTree tree, std::span<const std::int32_t> increments) {
  if (increments.size() != tree.n_edges()) throw DomainError("label_with_increments: one increment per edge required");
  std::vector<std::int32_t> labels(tree.n_vertices(), 0);
  for (std::size_t v = 1; v < labels.size(); ++v) {
    const auto inc = increments[v - 1];
    if (inc < -1 || inc > 1) throw DomainError("label_with_increments: increments must lie in {-1, 0, 1}");
    labels[v] = labels[static_cast<std::size_t>(tree.parent(v))] + inc;
  }
  return {std::move(tree), std::move(labels)};
}

inline SnakeStats stats(const LabeledTree& lt) {
  SnakeStats s;
  s.n_edges = lt.tree.n_edges();
  for (auto l : lt.labels) {
    if (l == 0) ++s.zero_count;
    else if (l > 0) ++s.pos_count;
    else ++s.neg_count;
  }
  return s;
}

/// n^(-3/4) #{v : label 0}, rescaled by edges.
inline double rescaled_zero_count(const SnakeStats& s) {
  return static_cast<double>(s.zero_count) * std::pow(static_cast<double>(s.n_edges), -0.75);
}

/// (#{v : label > 0} + #{v : label = 0} / 2) / (n + 1). Label-0 vertices sit
/// on the boundary and are split evenly between the two sides.
inline double positive_fraction(const SnakeStats& s) {
  return (static_cast<double>(s.pos_count) + 0.5 * static_cast<double>(s.zero_count)) / static_cast<double>(s.n_edges + 1);
}

/// #{v : label > 0} / (n + 1), without the boundary split.
inline double strict_positive_fraction(const SnakeStats& s) {
  return static_cast<double>(s.pos_count) / static_cast<double>(s.n_edges + 1);
}

/// Limit law scale: n^(-3/4) #S_n converges to 3^(1/2) 2^(-3/4) L^0 under
/// N_0(. | sigma = 1). The contour of a uniform tree with n edges is close to
/// sqrt(2n) e and each edge adds label variance 2/3, so labels are close to
/// (8/9)^(1/4) n^(1/4) times the snake driven by e.
inline double zero_count_limit_factor() { return std::sqrt(3.0) * std::pow(2.0, -0.75); }

/// E[zero_count] for a uniform labeled tree with n edges, by exhaustive
/// enumeration over trees and the 3^n labelings.
inline BigRational exact_mean_zero_count(std::size_t n) {
  if (n > 6) throw SizeError("exact_mean_zero_count: n must be <= 6");
  const auto trees = enumerate_plane_trees(n);
  std::size_t labelings = 1;
  for (std::size_t i = 0; i < n; ++i) labelings *= 3;
  long total = 0;
  std::vector<std::int32_t> inc(n);
  for (const auto& t : trees) {
    for (std::size_t code = 0; code < labelings; ++code) {
      std::size_t c = code;
      for (std::size_t e = 0; e < n; ++e, c /= 3) inc[e] = static_cast<std::int32_t>(c % 3) - 1;
      total += static_cast<long>(stats(label_with_increments(t, inc)).zero_count);
    }
  }
  return BigRational(total, static_cast<long>(trees.size() * labelings));
}

/// CSV row: n,zero_count,pos_count,neg_count,seed
inline void write_csv_row(std::ostream& os, const SnakeStats& s, const std::string& seed) {
  os << s.n_edges << ',' << s.zero_count << ',' << s.pos_count << ',' << s.neg_count << ',' << seed << '\n';
}

}  // namespace snakelaws::snake
