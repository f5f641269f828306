#include "mixkit/pairwise.hpp"

#include <algorithm>
#include <string>

#include "mixkit/errors.hpp"
#include "mixkit/kernels.hpp"

namespace mixkit {
namespace {

void mark_pruned(EdgeList& list, double margin) {
  const std::size_t p = list.variables;
  std::vector<double> w(p * p, 0.0);
  for (const Edge& e : list.edges) w[e.source * p + e.target] = e.weight;
  for (Edge& e : list.edges) {
    const std::size_t i = e.source;
    const std::size_t k = e.target;
    for (std::size_t j = 0; j < p && !e.pruned; ++j) {
      if (j == i || j == k) continue;
      e.pruned = w[i * p + k] <= std::min(w[i * p + j], w[j * p + k]) - margin;
    }
  }
}

template <typename Kernel>
EdgeList run(const std::vector<std::vector<double>>& columns, const BinningSpec& spec,
             const PruneOptions& prune, Kernel kernel) {
  const std::size_t p = columns.size();
  if (p < 2) {
    throw InputError("pairwise: need at least 2 variables, got " + std::to_string(p));
  }
  const std::size_t l = columns.front().size();
  for (const auto& c : columns) {
    if (c.size() != l) throw InputError("pairwise: columns differ in length");
  }
  if (l < 2) throw InputError("pairwise: need at least 2 samples");

  EdgeList list;
  list.variables = p;
  list.samples = l;
  list.bins = spec.bins_for(l);
  std::vector<std::vector<std::uint32_t>> bins(p);
  for (std::size_t v = 0; v < p; ++v) bins[v] = percentile_bins(columns[v], list.bins).bin_of;

  for (const auto& pair : kernel(bins, list.bins)) {
    list.edges.push_back({pair.source, pair.target, pair.phi_target_given_source, false});
  }
  std::sort(list.edges.begin(), list.edges.end(), [](const Edge& a, const Edge& b) {
    return a.source != b.source ? a.source < b.source : a.target < b.target;
  });
  if (prune.enabled) mark_pruned(list, prune.margin);
  return list;
}

}  // namespace

EdgeList pairwise_phi(const std::vector<std::vector<double>>& columns, const BinningSpec& spec,
                      const PruneOptions& prune) {
  return run(columns, spec, prune, [](const auto& b, std::size_t k) {
    return kernels::pairwise_phi_parallel(b, k);
  });
}

EdgeList pairwise_phi_serial(const std::vector<std::vector<double>>& columns,
                             const BinningSpec& spec, const PruneOptions& prune) {
  return run(columns, spec, prune, [](const auto& b, std::size_t k) {
    return kernels::pairwise_phi_serial(b, k);
  });
}

}  // namespace mixkit
