#ifndef MIXKIT_REDUCTIONS_HPP_
#define MIXKIT_REDUCTIONS_HPP_

#include <cstdint>
#include <random>

#include "mixkit/prob_core.hpp"

namespace mixkit {

inline constexpr std::size_t kSubsetSumLimit = 30;
inline constexpr double kPartitionTolerance = 1e-12;

// Normalized partition instance: positive weights summing to one.
class PartitionInstance {
 public:
  explicit PartitionInstance(ProbVector weights);

  const ProbVector& weights() const { return weights_; }
  std::size_t size() const { return weights_.size(); }

  // m weights that are multiples of 2^-denominator_bits, so subset sums are
  // exact in double precision. About half the draws admit an equal split.
  static PartitionInstance random_dyadic(std::size_t m, std::mt19937_64& rng,
                                         int denominator_bits = 16);

 private:
  ProbVector weights_;
};

// theta_ij = a_i [i == j]: X = Y almost surely with marginal a.
JointDist partition_to_joint(const PartitionInstance& instance);

// Meet-in-the-middle search for a subset with weight 0.5 (within 1e-12).
bool subset_sum_half(const PartitionInstance& instance);

struct RoundTrip {
  double alpha = 0.0;
  bool alpha_is_quarter = false;
  bool has_equal_split = false;

  bool agrees() const { return alpha_is_quarter == has_equal_split; }
};

// alpha of the diagonal joint via brute force, paired with the partition
// oracle's answer.
RoundTrip reduction_roundtrip(const PartitionInstance& instance);

}  // namespace mixkit

#endif  // MIXKIT_REDUCTIONS_HPP_
