#include "mixkit/kernels.hpp"

#include <bit>
#include <cmath>
#include <random>

#include "mixkit/contingency.hpp"
#include "mixkit/errors.hpp"

namespace mixkit::kernels {
namespace {

double positive_part_sum(const double* v, Eigen::Index n) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (v[i] > 0.0) s += v[i];
  }
  return s;
}

void column_subset_sum(const Eigen::MatrixXd& gamma, std::uint64_t mask, Eigen::VectorXd& v) {
  v.setZero();
  for (Eigen::Index j = 0; j < gamma.cols(); ++j) {
    if ((mask >> j) & 1U) v += gamma.col(j);
  }
}

std::uint64_t check_enum_size(const Eigen::MatrixXd& gamma) {
  const auto m = static_cast<std::size_t>(gamma.cols());
  if (m == 0 || gamma.rows() == 0) throw InputError("max_column_subset: empty matrix");
  if (m > kMaxEnumColumns) {
    throw SizeRefusal("max_column_subset: " + std::to_string(m) +
                      " columns exceeds the Gray-code walk limit");
  }
  return std::uint64_t{1} << (m - 1);  // top column held at 0
}

// Walks Gray codes with indices [first, last) and returns the best value
// seen (accumulated, not recomputed) with the mask attaining it.
SubsetMax walk_block(const Eigen::MatrixXd& gamma, std::uint64_t first, std::uint64_t last) {
  const Eigen::Index n = gamma.rows();
  Eigen::VectorXd v(n);
  std::uint64_t code = first ^ (first >> 1);
  column_subset_sum(gamma, code, v);
  SubsetMax best{positive_part_sum(v.data(), n), code};
  for (std::uint64_t idx = first + 1; idx < last; ++idx) {
    const int bit = std::countr_zero(idx);
    code ^= std::uint64_t{1} << bit;
    const double* col = gamma.col(bit).data();
    if ((code >> bit) & 1U) {
      for (Eigen::Index i = 0; i < n; ++i) v[i] += col[i];
    } else {
      for (Eigen::Index i = 0; i < n; ++i) v[i] -= col[i];
    }
    const double f = positive_part_sum(v.data(), n);
    if (f > best.value) best = {f, code};
  }
  return best;
}

SubsetMax finish(const Eigen::MatrixXd& gamma, const std::vector<SubsetMax>& blocks) {
  SubsetMax best = blocks.front();
  for (const SubsetMax& b : blocks) {
    if (b.value > best.value) best = b;
  }
  Eigen::VectorXd v(gamma.rows());
  column_subset_sum(gamma, best.mask, v);
  best.value = positive_part_sum(v.data(), v.size());
  return best;
}

struct RestartResult {
  double l1_norm = 0.0;
  std::vector<int> signs;
  std::size_t flips = 0;
  bool capped = false;
};

RestartResult run_restart(const Eigen::MatrixXd& gamma, std::uint64_t seed) {
  const Eigen::Index n = gamma.rows();
  const Eigen::Index m = gamma.cols();
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  RestartResult r;
  r.signs.resize(static_cast<std::size_t>(m));
  for (auto& z : r.signs) z = coin(rng) ? 1 : -1;

  Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
  for (Eigen::Index j = 0; j < m; ++j) v += r.signs[static_cast<std::size_t>(j)] * gamma.col(j);

  // A flip must gain more than rounding noise on ||Gamma z||_1 to count.
  const double threshold = 1e-14 * std::max(gamma.cwiseAbs().sum(), 1e-300);
  const std::size_t cap = sign_search_flip_cap(static_cast<std::size_t>(m));
  while (true) {
    Eigen::Index best_j = -1;
    double best_gain = threshold;
    for (Eigen::Index j = 0; j < m; ++j) {
      const double step = -2.0 * r.signs[static_cast<std::size_t>(j)];
      const double* col = gamma.col(j).data();
      double gain = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        gain += std::abs(v[i] + step * col[i]) - std::abs(v[i]);
      }
      if (gain > best_gain) {
        best_gain = gain;
        best_j = j;
      }
    }
    if (best_j < 0) break;
    if (r.flips == cap) {
      r.capped = true;
      break;
    }
    auto& z = r.signs[static_cast<std::size_t>(best_j)];
    v += (-2.0 * z) * gamma.col(best_j);
    z = -z;
    ++r.flips;
  }

  v.setZero();
  for (Eigen::Index j = 0; j < m; ++j) v += r.signs[static_cast<std::size_t>(j)] * gamma.col(j);
  r.l1_norm = v.cwiseAbs().sum();
  return r;
}

SignSearch reduce_restarts(std::vector<RestartResult>& results) {
  SignSearch out;
  std::size_t best = 0;
  for (std::size_t r = 0; r < results.size(); ++r) {
    out.flips += results[r].flips;
    out.flip_cap_hit = out.flip_cap_hit || results[r].capped;
    if (results[r].l1_norm > results[best].l1_norm) best = r;
  }
  out.l1_norm = results[best].l1_norm;
  out.signs = std::move(results[best].signs);
  out.restart = best;
  return out;
}

void check_restarts(const Eigen::MatrixXd& gamma, std::size_t restarts) {
  if (restarts == 0) throw InputError("sign_search: restarts must be >= 1");
  if (gamma.size() == 0) throw InputError("sign_search: empty matrix");
}

struct PairSlot {
  std::size_t a;
  std::size_t b;
};

std::vector<PairSlot> unordered_pairs(std::size_t p) {
  std::vector<PairSlot> pairs;
  pairs.reserve(p * (p - 1) / 2);
  for (std::size_t a = 0; a < p; ++a) {
    for (std::size_t b = a + 1; b < p; ++b) pairs.push_back({a, b});
  }
  return pairs;
}

// Slot of ordered pair (s, t) in (source, target) order.
std::size_t ordered_slot(std::size_t s, std::size_t t, std::size_t p) {
  return s * (p - 1) + (t < s ? t : t - 1);
}

void pair_phi(const std::vector<std::vector<std::uint32_t>>& bins, std::size_t k, PairSlot pair,
              std::vector<PairPhi>& out) {
  const std::size_t p = bins.size();
  const auto table = ContingencyTable::from_bins(bins[pair.a], bins[pair.b], k, k);
  // Rows are column a: conditioning on rows gives phi(b | a).
  out[ordered_slot(pair.a, pair.b, p)] = {pair.a, pair.b, phi_reverse_from_counts(table)};
  out[ordered_slot(pair.b, pair.a, p)] = {pair.b, pair.a, phi_from_counts(table)};
}

void check_pairwise(const std::vector<std::vector<std::uint32_t>>& bins, std::size_t k) {
  if (bins.size() < 2) throw InputError("pairwise_phi: need at least two columns");
  if (k == 0) throw InputError("pairwise_phi: k must be positive");
  for (const auto& c : bins) {
    if (c.size() != bins.front().size()) throw InputError("pairwise_phi: ragged columns");
  }
}

}  // namespace

SubsetMax max_column_subset_serial(const Eigen::MatrixXd& gamma) {
  const std::uint64_t total = check_enum_size(gamma);
  const std::uint64_t blocks = (total + kGrayBlock - 1) / kGrayBlock;
  std::vector<SubsetMax> results(blocks);
  for (std::uint64_t b = 0; b < blocks; ++b) {
    results[b] = walk_block(gamma, b * kGrayBlock, std::min(total, (b + 1) * kGrayBlock));
  }
  return finish(gamma, results);
}

SubsetMax max_column_subset_parallel(const Eigen::MatrixXd& gamma) {
  const std::uint64_t total = check_enum_size(gamma);
  const std::uint64_t blocks = (total + kGrayBlock - 1) / kGrayBlock;
  std::vector<SubsetMax> results(blocks);
  const auto nblocks = static_cast<std::int64_t>(blocks);
#pragma omp parallel for schedule(dynamic, 4) if (nblocks > 1)
  for (std::int64_t b = 0; b < nblocks; ++b) {
    const auto ub = static_cast<std::uint64_t>(b);
    results[ub] = walk_block(gamma, ub * kGrayBlock, std::min(total, (ub + 1) * kGrayBlock));
  }
  return finish(gamma, results);
}

std::size_t sign_search_flip_cap(std::size_t columns) { return 100 * columns + 1000; }

SignSearch sign_search_serial(const Eigen::MatrixXd& gamma, std::size_t restarts,
                              std::uint64_t seed) {
  check_restarts(gamma, restarts);
  std::vector<RestartResult> results(restarts);
  for (std::size_t r = 0; r < restarts; ++r) results[r] = run_restart(gamma, seed ^ r);
  return reduce_restarts(results);
}

SignSearch sign_search_parallel(const Eigen::MatrixXd& gamma, std::size_t restarts,
                                std::uint64_t seed) {
  check_restarts(gamma, restarts);
  std::vector<RestartResult> results(restarts);
  const auto n = static_cast<std::int64_t>(restarts);
#pragma omp parallel for schedule(dynamic, 1) if (n > 1)
  for (std::int64_t r = 0; r < n; ++r) {
    const auto ur = static_cast<std::size_t>(r);
    results[ur] = run_restart(gamma, seed ^ ur);
  }
  return reduce_restarts(results);
}

std::vector<PairPhi> pairwise_phi_serial(const std::vector<std::vector<std::uint32_t>>& bins,
                                         std::size_t k) {
  check_pairwise(bins, k);
  const std::size_t p = bins.size();
  std::vector<PairPhi> out(p * (p - 1));
  for (const PairSlot& pair : unordered_pairs(p)) pair_phi(bins, k, pair, out);
  return out;
}

std::vector<PairPhi> pairwise_phi_parallel(const std::vector<std::vector<std::uint32_t>>& bins,
                                           std::size_t k) {
  check_pairwise(bins, k);
  const std::size_t p = bins.size();
  std::vector<PairPhi> out(p * (p - 1));
  const auto pairs = unordered_pairs(p);
  const auto n = static_cast<std::int64_t>(pairs.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t q = 0; q < n; ++q) pair_phi(bins, k, pairs[static_cast<std::size_t>(q)], out);
  return out;
}

}  // namespace mixkit::kernels
