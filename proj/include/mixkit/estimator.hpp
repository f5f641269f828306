#ifndef MIXKIT_ESTIMATOR_HPP_
#define MIXKIT_ESTIMATOR_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mixkit/contingency.hpp"
#include "mixkit/mixing_exact.hpp"

namespace mixkit {

struct Sample {
  double x = 0.0;
  double y = 0.0;
};

using SampleSet = std::vector<Sample>;

// Percentile binning of one axis. With m = floor(l / k) and r = l - k m,
// the first r bins hold m + 1 samples and the remaining k - r hold m, in
// ascending order of value; ties keep original sample order.
struct BinAssignment {
  std::size_t bins = 0;
  std::vector<std::uint32_t> bin_of;   // per sample
  std::vector<std::size_t> cut_ranks;  // k + 1 rank boundaries, 0 ... l

  std::size_t size_of(std::size_t bin) const { return cut_ranks[bin + 1] - cut_ranks[bin]; }
};

BinAssignment percentile_bins(std::span<const double> values, std::size_t k);

enum class Schedule { kCubeRoot, kSqrt };

std::optional<Schedule> parse_schedule(std::string_view name);
std::string_view to_string(Schedule s);

// Smallest k with k^3 >= l (cube root) or k^2 >= l (sqrt).
std::size_t schedule_bins(Schedule s, std::size_t l);

struct BinningSpec {
  std::optional<std::size_t> fixed_bins;  // overrides the schedule when set
  Schedule schedule = Schedule::kCubeRoot;

  // Throws InputError if a fixed k exceeds l.
  std::size_t bins_for(std::size_t l) const;
};

ContingencyTable binned_table(const SampleSet& samples, std::size_t k);
JointDist binned_joint(const SampleSet& samples, std::size_t k);

struct Estimate {
  std::size_t samples = 0;
  std::size_t bins = 0;
  MixingReport report;
};

// beta and both phis come from exact integer counts; alpha and mutual
// information from the binned joint.
Estimate estimate_mixing(const SampleSet& samples, const BinningSpec& spec,
                         const MixingOptions& options = {});

// beta of the raw empirical joint (one sample per bin). Requires pairwise
// distinct x and pairwise distinct y; the result is exactly (l - 1) / l.
double naive_estimate_beta(const SampleSet& samples);

// Named synthetic sources on [0, 1]^2: "independent", "block(b)" (density b
// on b equal diagonal blocks), "comonotone" (y = x).
class Generator {
 public:
  static Generator parse(std::string_view spec);

  SampleSet draw(std::size_t l, std::uint64_t seed) const;
  std::string name() const;

  // beta of the source distribution itself.
  std::optional<double> true_beta() const;

 private:
  enum class Kind { kIndependent, kBlock, kComonotone };
  Generator(Kind kind, std::size_t blocks) : kind_(kind), blocks_(blocks) {}
  Kind kind_;
  std::size_t blocks_;
};

struct TraceRow {
  std::size_t samples = 0;
  std::size_t bins = 0;
  MixingReport report;
  std::optional<double> naive_beta;  // empty when coordinates collide
};

using EstimateTrace = std::vector<TraceRow>;

// Row r draws a fresh sample of lengths[r] with seed ^ r, so rows are
// independent of evaluation order. lengths must be strictly increasing.
EstimateTrace convergence_experiment(const Generator& generator,
                                     std::span<const std::size_t> lengths,
                                     const BinningSpec& spec, std::uint64_t seed,
                                     const MixingOptions& options = {});

// Trace over prefixes 10, 100, ... of a single sample, ending at its full
// length.
EstimateTrace prefix_trace(const SampleSet& samples, const BinningSpec& spec,
                           const MixingOptions& options = {});

}  // namespace mixkit

#endif  // MIXKIT_ESTIMATOR_HPP_
