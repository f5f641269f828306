#include "mixkit/estimator.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <numeric>

#include "mixkit/errors.hpp"

namespace mixkit {
namespace {

std::vector<double> xs_of(const SampleSet& s) {
  std::vector<double> v(s.size());
  std::transform(s.begin(), s.end(), v.begin(), [](const Sample& p) { return p.x; });
  return v;
}

std::vector<double> ys_of(const SampleSet& s) {
  std::vector<double> v(s.size());
  std::transform(s.begin(), s.end(), v.begin(), [](const Sample& p) { return p.y; });
  return v;
}

bool all_distinct(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return std::adjacent_find(v.begin(), v.end()) == v.end();
}

void require_estimable(const SampleSet& samples) {
  if (samples.size() < 2) throw InputError("estimation needs at least 2 samples");
}

}  // namespace

BinAssignment percentile_bins(std::span<const double> values, std::size_t k) {
  const std::size_t l = values.size();
  if (k == 0) throw InputError("percentile_bins: k must be positive");
  if (k > l) {
    throw InputError("percentile_bins: k = " + std::to_string(k) + " exceeds the sample count " +
                     std::to_string(l));
  }
  std::vector<std::size_t> order(l);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  const std::size_t per_bin = l / k;
  const std::size_t larger = l - k * per_bin;
  BinAssignment out;
  out.bins = k;
  out.cut_ranks.resize(k + 1);
  out.cut_ranks[0] = 0;
  for (std::size_t b = 0; b < k; ++b) {
    out.cut_ranks[b + 1] = out.cut_ranks[b] + per_bin + (b < larger ? 1 : 0);
  }
  out.bin_of.resize(l);
  const std::size_t split = larger * (per_bin + 1);
  for (std::size_t rank = 0; rank < l; ++rank) {
    const std::size_t bin =
        rank < split ? rank / (per_bin + 1) : larger + (rank - split) / per_bin;
    out.bin_of[order[rank]] = static_cast<std::uint32_t>(bin);
  }
  return out;
}

std::optional<Schedule> parse_schedule(std::string_view name) {
  if (name == "cuberoot") return Schedule::kCubeRoot;
  if (name == "sqrt") return Schedule::kSqrt;
  return std::nullopt;
}

std::string_view to_string(Schedule s) {
  return s == Schedule::kCubeRoot ? "cuberoot" : "sqrt";
}

std::size_t schedule_bins(Schedule s, std::size_t l) {
  if (l == 0) return 0;
  const int power = s == Schedule::kCubeRoot ? 3 : 2;
  auto reaches = [&](std::size_t k) {
    std::size_t acc = 1;
    for (int p = 0; p < power; ++p) acc *= k;
    return acc >= l;
  };
  auto k = static_cast<std::size_t>(power == 3 ? std::cbrt(static_cast<double>(l))
                                               : std::sqrt(static_cast<double>(l)));
  k = std::max<std::size_t>(k, 1);
  while (k > 1 && reaches(k - 1)) --k;
  while (!reaches(k)) ++k;
  return k;
}

std::size_t BinningSpec::bins_for(std::size_t l) const {
  if (fixed_bins) {
    if (*fixed_bins == 0 || *fixed_bins > l) {
      throw InputError("bins = " + std::to_string(*fixed_bins) + " must lie in [1, " +
                       std::to_string(l) + "]");
    }
    return *fixed_bins;
  }
  return std::min(schedule_bins(schedule, l), l);
}

ContingencyTable binned_table(const SampleSet& samples, std::size_t k) {
  const auto xs = xs_of(samples);
  const auto ys = ys_of(samples);
  const BinAssignment bx = percentile_bins(xs, k);
  const BinAssignment by = percentile_bins(ys, k);
  return ContingencyTable::from_bins(bx.bin_of, by.bin_of, k, k);
}

JointDist binned_joint(const SampleSet& samples, std::size_t k) {
  return binned_table(samples, k).to_joint();
}

Estimate estimate_mixing(const SampleSet& samples, const BinningSpec& spec,
                         const MixingOptions& options) {
  require_estimable(samples);
  Estimate e;
  e.samples = samples.size();
  e.bins = spec.bins_for(samples.size());
  const ContingencyTable table = binned_table(samples, e.bins);
  e.report = mixing_report(table.to_joint(), options);
  e.report.beta = beta_from_counts(table);
  e.report.phi_x_given_y = phi_from_counts(table);
  e.report.phi_y_given_x = phi_reverse_from_counts(table);
  return e;
}

double naive_estimate_beta(const SampleSet& samples) {
  require_estimable(samples);
  if (!all_distinct(xs_of(samples)) || !all_distinct(ys_of(samples))) {
    throw InputError(
        "naive estimator requires x_i != x_j and y_i != y_j for all i != j; duplicate "
        "coordinates found");
  }
  return beta_from_counts(binned_table(samples, samples.size()));
}

Generator Generator::parse(std::string_view spec) {
  if (spec == "independent") return Generator(Kind::kIndependent, 1);
  if (spec == "comonotone") return Generator(Kind::kComonotone, 1);
  if (spec.starts_with("block(") && spec.ends_with(")")) {
    const std::string_view digits = spec.substr(6, spec.size() - 7);
    std::size_t b = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), b);
    if (ec == std::errc() && ptr == digits.data() + digits.size() && b >= 1) {
      return Generator(Kind::kBlock, b);
    }
  }
  throw InputError("unknown generator '" + std::string(spec) +
                   "' (expected independent, block(b), comonotone)");
}

std::string Generator::name() const {
  switch (kind_) {
    case Kind::kIndependent: return "independent";
    case Kind::kBlock: return "block(" + std::to_string(blocks_) + ")";
    case Kind::kComonotone: return "comonotone";
  }
  return "unknown";
}

std::optional<double> Generator::true_beta() const {
  switch (kind_) {
    case Kind::kIndependent: return 0.0;
    case Kind::kBlock:
      return static_cast<double>(blocks_ - 1) / static_cast<double>(blocks_);
    case Kind::kComonotone: return 1.0;
  }
  return std::nullopt;
}

SampleSet Generator::draw(std::size_t l, std::uint64_t seed) const {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> block(0, blocks_ - 1);
  SampleSet out(l);
  const double width = 1.0 / static_cast<double>(blocks_);
  for (auto& s : out) {
    switch (kind_) {
      case Kind::kIndependent:
        s.x = unit(rng);
        s.y = unit(rng);
        break;
      case Kind::kBlock: {
        const auto b = static_cast<double>(block(rng));
        s.x = (b + unit(rng)) * width;
        s.y = (b + unit(rng)) * width;
        break;
      }
      case Kind::kComonotone:
        s.x = unit(rng);
        s.y = s.x;
        break;
    }
  }
  return out;
}

namespace {

TraceRow trace_row(const SampleSet& samples, const BinningSpec& spec,
                   const MixingOptions& options) {
  TraceRow row;
  const Estimate e = estimate_mixing(samples, spec, options);
  row.samples = e.samples;
  row.bins = e.bins;
  row.report = e.report;
  try {
    row.naive_beta = naive_estimate_beta(samples);
  } catch (const InputError&) {
    row.naive_beta.reset();
  }
  return row;
}

}  // namespace

EstimateTrace convergence_experiment(const Generator& generator,
                                     std::span<const std::size_t> lengths,
                                     const BinningSpec& spec, std::uint64_t seed,
                                     const MixingOptions& options) {
  for (std::size_t r = 0; r < lengths.size(); ++r) {
    if (lengths[r] < 2) throw InputError("convergence_experiment: lengths must be >= 2");
    if (r > 0 && lengths[r] <= lengths[r - 1]) {
      throw InputError("convergence_experiment: lengths must be strictly increasing");
    }
  }
  EstimateTrace trace(lengths.size());
  std::exception_ptr error;
  const auto rows = static_cast<std::int64_t>(lengths.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t r = 0; r < rows; ++r) {
    const auto ur = static_cast<std::size_t>(r);
    try {
      trace[ur] = trace_row(generator.draw(lengths[ur], seed ^ ur), spec, options);
    } catch (...) {
#pragma omp critical(mixkit_trace_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return trace;
}

EstimateTrace prefix_trace(const SampleSet& samples, const BinningSpec& spec,
                           const MixingOptions& options) {
  require_estimable(samples);
  std::vector<std::size_t> lengths;
  for (std::size_t p = 10; p < samples.size(); p *= 10) lengths.push_back(p);
  lengths.push_back(samples.size());
  EstimateTrace trace;
  for (std::size_t len : lengths) {
    BinningSpec prefix_spec = spec;
    if (prefix_spec.fixed_bins) prefix_spec.fixed_bins = std::min(*prefix_spec.fixed_bins, len);
    const SampleSet prefix(samples.begin(), samples.begin() + static_cast<std::ptrdiff_t>(len));
    trace.push_back(trace_row(prefix, prefix_spec, options));
  }
  return trace;
}

}  // namespace mixkit
