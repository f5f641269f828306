#ifndef MIXKIT_PAIRWISE_HPP_
#define MIXKIT_PAIRWISE_HPP_

#include <cstddef>
#include <vector>

#include "mixkit/estimator.hpp"

namespace mixkit {

struct Edge {
  std::size_t source = 0;
  std::size_t target = 0;
  double weight = 0.0;  // phi(target | source)
  bool pruned = false;
};

struct EdgeList {
  std::size_t variables = 0;
  std::size_t samples = 0;
  std::size_t bins = 0;
  std::vector<Edge> edges;  // sorted by (source, target)
};

struct PruneOptions {
  bool enabled = false;
  double margin = 0.0;
};

// p columns of l observations each. Every column is percentile-binned once
// with the same k, then phi(target | source) is computed for all p (p - 1)
// ordered pairs. With pruning, edge (i, k) is marked when some j has
// phi(k|i) <= min(phi(j|i), phi(k|j)) - margin, judged on the unpruned
// weights.
EdgeList pairwise_phi(const std::vector<std::vector<double>>& columns, const BinningSpec& spec,
                      const PruneOptions& prune = {});

EdgeList pairwise_phi_serial(const std::vector<std::vector<double>>& columns,
                             const BinningSpec& spec, const PruneOptions& prune = {});

}  // namespace mixkit

#endif  // MIXKIT_PAIRWISE_HPP_
