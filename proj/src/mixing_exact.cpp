#include "mixkit/mixing_exact.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mixkit/errors.hpp"
#include "mixkit/kernels.hpp"

namespace mixkit {
namespace {

// max over columns with positive mass of (1 / w_j) sum_i (g_ij)_+.
double max_normalized_positive_column(const Eigen::MatrixXd& g, const Eigen::VectorXd& w) {
  double best = 0.0;
  for (Eigen::Index j = 0; j < g.cols(); ++j) {
    if (w(j) <= 0.0) continue;
    double s = 0.0;
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
      if (g(i, j) > 0.0) s += g(i, j);
    }
    best = std::max(best, s / w(j));
  }
  return best;
}

using SubsetKernel = kernels::SubsetMax (*)(const Eigen::MatrixXd&);

double alpha_by_enumeration(const JointDist& theta, std::size_t enum_limit, SubsetKernel kernel) {
  const std::size_t side = std::min(theta.rows(), theta.cols());
  const std::size_t limit = std::min(enum_limit, kernels::kMaxEnumColumns);
  if (side > limit) {
    throw SizeRefusal("alpha_exact: smaller dimension " + std::to_string(side) +
                      " exceeds the enumeration limit " + std::to_string(limit) +
                      "; use alpha_bounds for an interval");
  }
  const GammaMatrix gamma = gamma_matrix(theta);
  if (theta.cols() <= theta.rows()) return kernel(gamma.matrix()).value;
  const Eigen::MatrixXd gt = gamma.matrix().transpose();
  return kernel(gt).value;
}

}  // namespace

double beta(const JointDist& theta) {
  return 0.5 * gamma_matrix(theta).matrix().cwiseAbs().sum();
}

double phi(const JointDist& theta) {
  const auto [mu, nu] = marginals(theta);
  const GammaMatrix gamma = gamma_matrix(theta);
  return max_normalized_positive_column(gamma.matrix(), nu.weights());
}

double phi_reverse(const JointDist& theta) { return phi(transpose(theta)); }

double alpha_exact(const JointDist& theta, std::size_t enum_limit) {
  return alpha_by_enumeration(theta, enum_limit, &kernels::max_column_subset_parallel);
}

double alpha_exact_serial(const JointDist& theta, std::size_t enum_limit) {
  return alpha_by_enumeration(theta, enum_limit, &kernels::max_column_subset_serial);
}

double alpha_bruteforce(const JointDist& theta) {
  const std::size_t n = theta.rows();
  const std::size_t m = theta.cols();
  if (n + m > kBruteForceLimit) {
    throw SizeRefusal("alpha_bruteforce: n + m = " + std::to_string(n + m) + " exceeds " +
                      std::to_string(kBruteForceLimit));
  }
  const auto [mu, nu] = marginals(theta);
  std::vector<double> column_mass(m);
  double best = 0.0;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    double p_s = 0.0;
    std::fill(column_mass.begin(), column_mass.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      if (!((s >> i) & 1U)) continue;
      p_s += mu[i];
      for (std::size_t j = 0; j < m; ++j) column_mass[j] += theta(i, j);
    }
    for (std::uint64_t t = 0; t < (std::uint64_t{1} << m); ++t) {
      double p_t = 0.0;
      double p_st = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        if (!((t >> j) & 1U)) continue;
        p_t += nu[j];
        p_st += column_mass[j];
      }
      best = std::max(best, std::abs(p_st - p_s * p_t));
    }
  }
  return best;
}

bool satisfies_chain(const MixingReport& r, double tol) {
  const double lo_phi = std::min(r.phi_x_given_y, r.phi_y_given_x);
  const double hi_phi = std::max(r.phi_x_given_y, r.phi_y_given_x);
  return r.alpha_lower >= -tol && 2.0 * r.alpha_lower <= r.beta + tol &&
         r.beta <= lo_phi + tol && hi_phi <= 1.0 + tol && r.alpha_upper <= 0.25 + tol;
}

MixingReport mixing_report(const JointDist& theta, const MixingOptions& options) {
  MixingReport r;
  r.beta = beta(theta);
  r.phi_x_given_y = phi(theta);
  r.phi_y_given_x = phi_reverse(theta);
  r.mutual_information = mutual_information(theta);
  if (std::min(theta.rows(), theta.cols()) <=
      std::min(options.enum_limit, kernels::kMaxEnumColumns)) {
    r.alpha_lower = r.alpha_upper = alpha_exact(theta, options.enum_limit);
    r.alpha_is_exact = true;
  } else {
    const AlphaBounds b = alpha_bounds(theta, options.bounds);
    r.alpha_lower = b.lower;
    r.alpha_upper = b.upper;
    r.alpha_is_exact = false;
  }
  return r;
}

}  // namespace mixkit
