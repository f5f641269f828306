#ifndef MIXKIT_CONTINGENCY_HPP_
#define MIXKIT_CONTINGENCY_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mixkit/prob_core.hpp"

namespace mixkit {

// Integer cell counts of a binned sample, stored sparsely (occupied cells
// only, sorted by row then column) so that k = l tables stay O(l).
//
// beta and phi have the form (integer) / (integer) on a table, so they are
// evaluated in exact integer arithmetic and rounded once; the naive
// estimator relies on this to return (l-1)/l to the last bit. Only occupied
// cells can have l c_ij > r_i s_j, so the positive parts never need the
// empty ones.
struct ContingencyTable {
  struct Cell {
    std::uint32_t row;
    std::uint32_t col;
    std::int64_t count;
  };

  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Cell> cells;
  std::vector<std::int64_t> row_totals;
  std::vector<std::int64_t> col_totals;
  std::int64_t total = 0;

  static ContingencyTable from_bins(std::span<const std::uint32_t> row_bins,
                                    std::span<const std::uint32_t> col_bins, std::size_t rows,
                                    std::size_t cols);

  JointDist to_joint() const;
};

// beta of the empirical joint: sum_ij (l c_ij - r_i s_j)_+ / l^2.
double beta_from_counts(const ContingencyTable& table);

// phi(rows | cols): max over columns with s_j > 0 of
// sum_i (l c_ij - r_i s_j)_+ / (l s_j).
double phi_from_counts(const ContingencyTable& table);

// phi(cols | rows), skipping empty rows.
double phi_reverse_from_counts(const ContingencyTable& table);

}  // namespace mixkit

#endif  // MIXKIT_CONTINGENCY_HPP_
