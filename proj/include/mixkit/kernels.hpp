#ifndef MIXKIT_KERNELS_HPP_
#define MIXKIT_KERNELS_HPP_

// Hot loops behind the exact and bounded alpha computations and the
// all-pairs phi batch. Every kernel has a serial reference and an OpenMP
// version; the two return bit-identical results for any thread count.

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace mixkit::kernels {

// Codes per enumeration block. Blocks are the unit of parallel work and each
// block recomputes Gamma*b from scratch at its first code, so the rounding
// pattern depends only on this constant, never on the thread count.
inline constexpr std::uint64_t kGrayBlock = std::uint64_t{1} << 12;

// Largest column count the Gray-code walk accepts.
inline constexpr std::size_t kMaxEnumColumns = 40;

struct SubsetMax {
  double value = 0.0;       // max_b sum_i ((Gamma b)_i)_+, recomputed from scratch at the winner
  std::uint64_t mask = 0;   // column subset b attaining it (bit j = column j)
};

// Maximizes sum_i ((Gamma b)_i)_+ over b in {0,1}^m via a Gray-code walk.
// Only codes with the top column cleared are visited: b and its complement
// give the same value because Gamma's rows sum to zero.
SubsetMax max_column_subset_serial(const Eigen::MatrixXd& gamma);
SubsetMax max_column_subset_parallel(const Eigen::MatrixXd& gamma);

struct SignSearch {
  double l1_norm = 0.0;       // ||Gamma z||_1 of the best local optimum
  std::vector<int> signs;     // z in {-1, +1}^m
  std::size_t restart = 0;    // restart index that produced it
  std::size_t flips = 0;      // total flips over all restarts
  bool flip_cap_hit = false;  // a restart stopped on the flip cap instead of a local optimum
};

// Greedy best-improvement single-coordinate flips on z, from `restarts`
// random sign vectors. Restart r draws its start from an RNG seeded with
// seed ^ r. Ties keep the lowest restart index.
SignSearch sign_search_serial(const Eigen::MatrixXd& gamma, std::size_t restarts,
                              std::uint64_t seed);
SignSearch sign_search_parallel(const Eigen::MatrixXd& gamma, std::size_t restarts,
                                std::uint64_t seed);

// Flip cap per restart; exceeding it sets SignSearch::flip_cap_hit.
std::size_t sign_search_flip_cap(std::size_t columns);

struct PairPhi {
  std::size_t source = 0;
  std::size_t target = 0;
  double phi_target_given_source = 0.0;
};

// For columns already percentile-binned into k bins (bins[c][s] = bin of
// sample s in column c), computes phi(target | source) for every ordered
// pair of distinct columns from exact integer contingency counts. Output is
// ordered by (source, target).
std::vector<PairPhi> pairwise_phi_serial(const std::vector<std::vector<std::uint32_t>>& bins,
                                         std::size_t k);
std::vector<PairPhi> pairwise_phi_parallel(const std::vector<std::vector<std::uint32_t>>& bins,
                                           std::size_t k);

}  // namespace mixkit::kernels

#endif  // MIXKIT_KERNELS_HPP_
