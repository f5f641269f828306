#include "mixkit/reductions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mixkit/errors.hpp"
#include "mixkit/mixing_exact.hpp"

namespace mixkit {
namespace {

std::vector<double> subset_sums(std::span<const double> w) {
  std::vector<double> sums{0.0};
  sums.reserve(std::size_t{1} << w.size());
  for (double a : w) {
    const std::size_t size = sums.size();
    for (std::size_t s = 0; s < size; ++s) sums.push_back(sums[s] + a);
  }
  return sums;
}

// Splits `total` units into `parts` positive integers uniformly over
// compositions.
std::vector<std::uint64_t> random_composition(std::uint64_t total, std::size_t parts,
                                              std::mt19937_64& rng) {
  std::vector<std::uint64_t> cuts;
  std::uniform_int_distribution<std::uint64_t> pick(1, total - 1);
  while (cuts.size() + 1 < parts) {
    const std::uint64_t c = pick(rng);
    if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<std::uint64_t> out;
  std::uint64_t prev = 0;
  for (std::uint64_t c : cuts) {
    out.push_back(c - prev);
    prev = c;
  }
  out.push_back(total - prev);
  return out;
}

}  // namespace

PartitionInstance::PartitionInstance(ProbVector weights) : weights_(std::move(weights)) {
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (!(weights_[i] > 0.0)) throw InputError("PartitionInstance: weights must be positive");
  }
}

PartitionInstance PartitionInstance::random_dyadic(std::size_t m, std::mt19937_64& rng,
                                                   int denominator_bits) {
  if (m == 0) throw InputError("random_dyadic: m must be positive");
  if (denominator_bits < 2 || denominator_bits > 50 ||
      (std::uint64_t{1} << (denominator_bits - 1)) < m) {
    throw InputError("random_dyadic: denominator too small for " + std::to_string(m) + " weights");
  }
  const std::uint64_t total = std::uint64_t{1} << denominator_bits;
  std::vector<std::uint64_t> units;
  std::bernoulli_distribution planted(0.5);
  if (m >= 2 && planted(rng)) {
    // Two groups of half the mass each guarantee an equal split.
    std::uniform_int_distribution<std::size_t> group(1, m - 1);
    const std::size_t g = group(rng);
    units = random_composition(total / 2, g, rng);
    const auto rest = random_composition(total / 2, m - g, rng);
    units.insert(units.end(), rest.begin(), rest.end());
    std::shuffle(units.begin(), units.end(), rng);
  } else {
    units = random_composition(total, m, rng);
  }
  std::vector<double> w(m);
  for (std::size_t i = 0; i < m; ++i) {
    w[i] = std::ldexp(static_cast<double>(units[i]), -denominator_bits);
  }
  return PartitionInstance(ProbVector(w));
}

JointDist partition_to_joint(const PartitionInstance& instance) {
  return JointDist(Eigen::MatrixXd(instance.weights().weights().asDiagonal()));
}

bool subset_sum_half(const PartitionInstance& instance) {
  const std::size_t m = instance.size();
  if (m > kSubsetSumLimit) {
    throw SizeRefusal("subset_sum_half: " + std::to_string(m) + " weights exceeds " +
                      std::to_string(kSubsetSumLimit));
  }
  const Eigen::VectorXd& w = instance.weights().weights();
  const std::size_t half = m / 2;
  const auto left = subset_sums(std::span<const double>(w.data(), half));
  auto right = subset_sums(std::span<const double>(w.data() + half, m - half));
  std::sort(right.begin(), right.end());
  for (double a : left) {
    const double need = 0.5 - a;
    const auto it = std::lower_bound(right.begin(), right.end(), need - kPartitionTolerance);
    if (it != right.end() && *it <= need + kPartitionTolerance) return true;
  }
  return false;
}

RoundTrip reduction_roundtrip(const PartitionInstance& instance) {
  RoundTrip r;
  r.alpha = alpha_bruteforce(partition_to_joint(instance));
  r.alpha_is_quarter = std::abs(r.alpha - 0.25) <= kPartitionTolerance;
  r.has_equal_split = subset_sum_half(instance);
  return r;
}

}  // namespace mixkit
