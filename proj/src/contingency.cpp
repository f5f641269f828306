#include "mixkit/contingency.hpp"

#include <algorithm>

#include "mixkit/errors.hpp"

namespace mixkit {
namespace {

using Wide = __int128;

// Largest numerator / denominator over the candidates with a positive
// denominator, compared exactly by cross-multiplication.
double exact_max_ratio(const std::vector<std::int64_t>& numerators,
                       const std::vector<std::int64_t>& denominators) {
  std::int64_t best_num = 0;
  std::int64_t best_den = 1;
  for (std::size_t j = 0; j < numerators.size(); ++j) {
    if (denominators[j] <= 0) continue;
    if (Wide(numerators[j]) * best_den > Wide(best_num) * denominators[j]) {
      best_num = numerators[j];
      best_den = denominators[j];
    }
  }
  return static_cast<double>(best_num) / static_cast<double>(best_den);
}

std::int64_t cell_excess(const ContingencyTable& t, const ContingencyTable::Cell& c) {
  return t.total * c.count - t.row_totals[c.row] * t.col_totals[c.col];
}

void require_samples(const ContingencyTable& t, const char* what) {
  if (t.total <= 0) throw InputError(std::string(what) + ": no samples");
}

}  // namespace

ContingencyTable ContingencyTable::from_bins(std::span<const std::uint32_t> row_bins,
                                             std::span<const std::uint32_t> col_bins,
                                             std::size_t rows, std::size_t cols) {
  if (row_bins.size() != col_bins.size()) {
    throw InputError("ContingencyTable: bin vectors differ in length");
  }
  if (rows == 0 || cols == 0) throw InputError("ContingencyTable: empty table");
  ContingencyTable t;
  t.rows = rows;
  t.cols = cols;
  t.row_totals.assign(rows, 0);
  t.col_totals.assign(cols, 0);

  std::vector<std::uint64_t> keys(row_bins.size());
  for (std::size_t s = 0; s < row_bins.size(); ++s) {
    const std::uint32_t i = row_bins[s];
    const std::uint32_t j = col_bins[s];
    if (i >= rows || j >= cols) throw InputError("ContingencyTable: bin index out of range");
    ++t.row_totals[i];
    ++t.col_totals[j];
    keys[s] = (std::uint64_t{i} << 32) | j;
  }
  std::sort(keys.begin(), keys.end());
  for (std::size_t s = 0; s < keys.size();) {
    std::size_t e = s;
    while (e < keys.size() && keys[e] == keys[s]) ++e;
    t.cells.push_back({static_cast<std::uint32_t>(keys[s] >> 32),
                       static_cast<std::uint32_t>(keys[s] & 0xffffffffU),
                       static_cast<std::int64_t>(e - s)});
    s = e;
  }
  t.total = static_cast<std::int64_t>(row_bins.size());
  return t;
}

JointDist ContingencyTable::to_joint() const {
  require_samples(*this, "ContingencyTable");
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows),
                                            static_cast<Eigen::Index>(cols));
  const double l = static_cast<double>(total);
  for (const Cell& c : cells) p(c.row, c.col) = static_cast<double>(c.count) / l;
  return JointDist(std::move(p));
}

double beta_from_counts(const ContingencyTable& t) {
  require_samples(t, "beta_from_counts");
  std::int64_t positive = 0;
  for (const auto& c : t.cells) positive += std::max<std::int64_t>(cell_excess(t, c), 0);
  const double l = static_cast<double>(t.total);
  return static_cast<double>(positive) / (l * l);
}

double phi_from_counts(const ContingencyTable& t) {
  require_samples(t, "phi_from_counts");
  std::vector<std::int64_t> num(t.cols, 0);
  std::vector<std::int64_t> den(t.cols, 0);
  for (const auto& c : t.cells) num[c.col] += std::max<std::int64_t>(cell_excess(t, c), 0);
  for (std::size_t j = 0; j < t.cols; ++j) den[j] = t.total * t.col_totals[j];
  return exact_max_ratio(num, den);
}

double phi_reverse_from_counts(const ContingencyTable& t) {
  require_samples(t, "phi_reverse_from_counts");
  std::vector<std::int64_t> num(t.rows, 0);
  std::vector<std::int64_t> den(t.rows, 0);
  for (const auto& c : t.cells) num[c.row] += std::max<std::int64_t>(cell_excess(t, c), 0);
  for (std::size_t i = 0; i < t.rows; ++i) den[i] = t.total * t.row_totals[i];
  return exact_max_ratio(num, den);
}

}  // namespace mixkit
