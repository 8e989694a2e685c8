#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hiernet/graph.hpp"

namespace hiernet {

// Recipe for a k-level hierarchy G_k ... G_2 G_1, listed bottom first.
struct HierarchySpec {
  std::vector<Graph> bases;   // bases[0] is the bottom level
  std::vector<double> alphas; // alphas[0] == 1
  bool truncated = false;

  std::size_t levels() const noexcept { return bases.size(); }

  // Throws on: empty bases, alpha count mismatch, alphas[0] != 1,
  // nonpositive alpha, base order < 2, disconnected base, truncation with
  // unequal base orders.
  void validate() const;

  // Node count of the built hierarchy.
  std::size_t order() const;

  // alphas = (1, a, a^2, ...).
  static HierarchySpec geometric(std::vector<Graph> bases, double alpha, bool truncated = false);
  // k copies of one base.
  static HierarchySpec uniform(const Graph& base, std::size_t k, double alpha = 1.0,
                               bool truncated = false);
};

// alpha-weighted hierarchical product: |G| copies of H attached to the
// nodes of G through the root of H. Node (g, h) has index g*|H| + h and
// the product is rooted at (root_G, root_H).
Graph hproduct(const Graph& g, const Graph& h, double alpha = 1.0);

// Truncated variant: the root of G carries no copy of H. Nodes are the
// root (root_G, root_H) plus (g, h) for g != root_G, kept in increasing
// (g, h) index order.
Graph truncated_hproduct(const Graph& g, const Graph& h, double alpha = 1.0);

// Right-to-left fold of the products over spec.bases. Truncated specs are
// built as the full product with invalid addresses removed.
Graph build_hierarchy(const HierarchySpec& spec);

// Dense sum_i alpha_i I_[i+1..k] (x) A_i (x) D_[1..i-1], with D the root
// projector of each base. Non-truncated specs only.
Eigen::MatrixXd kronecker_adjacency(const HierarchySpec& spec);
// Same sum with Laplacians in place of adjacencies.
Eigen::MatrixXd kronecker_laplacian(const HierarchySpec& spec);

// ---------------------------------------------------------------------------
// Node addressal. Digits are stored bottom level first: digits[i] names
// the node within the level-(i+1) base. Digit 0 is the root position only
// when every base is rooted at node 0; the codec itself is a pure
// mixed-radix map on base node indices.

struct NodeAddress {
  std::vector<std::size_t> digits;

  friend bool operator==(const NodeAddress&, const NodeAddress&) = default;
};

class AddressCodec {
 public:
  explicit AddressCodec(const HierarchySpec& spec);
  AddressCodec(std::vector<std::size_t> radices, bool truncated);

  std::size_t size() const noexcept { return size_; }
  std::size_t levels() const noexcept { return radices_.size(); }
  bool truncated() const noexcept { return truncated_; }

  NodeAddress address(std::size_t index) const;
  std::size_t index(const NodeAddress& address) const;

  // Throws naming the first offending digit.
  void check(const NodeAddress& address) const;

 private:
  std::vector<std::size_t> radices_;
  bool truncated_ = false;
  std::size_t size_ = 0;
  // valid_[r]: number of valid truncated suffixes of length r.
  std::vector<std::size_t> valid_;
};

}  // namespace hiernet
