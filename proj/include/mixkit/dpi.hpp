#ifndef MIXKIT_DPI_HPP_
#define MIXKIT_DPI_HPP_

#include <array>
#include <cstddef>
#include <string_view>

#include <Eigen/Dense>

#include "mixkit/mixing_exact.hpp"
#include "mixkit/prob_core.hpp"

namespace mixkit {

// Row-stochastic m x l matrix: row j is the law of Z given Y = j.
class Channel {
 public:
  explicit Channel(Eigen::MatrixXd rows);

  std::size_t inputs() const { return static_cast<std::size_t>(c_.rows()); }
  std::size_t outputs() const { return static_cast<std::size_t>(c_.cols()); }
  const Eigen::MatrixXd& matrix() const { return c_; }

  static Channel identity(std::size_t m);
  static Channel constant(std::size_t m, const ProbVector& rho);

 private:
  Eigen::MatrixXd c_;
};

// Joint law delta_ijk of (X, Y, Z), stored densely with k fastest.
class TripleDist {
 public:
  TripleDist(std::size_t n, std::size_t m, std::size_t l, std::vector<double> values);

  std::size_t n() const { return n_; }
  std::size_t m() const { return m_; }
  std::size_t l() const { return l_; }
  double operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return values_[(i * m_ + j) * l_ + k];
  }
  const std::vector<double>& values() const { return values_; }

  // Exchanges the roles of X and Z.
  TripleDist swap_outer() const;

 private:
  std::size_t n_;
  std::size_t m_;
  std::size_t l_;
  std::vector<double> values_;
};

enum class Pair { kXY, kYZ, kXZ };

// delta_ijk = theta_ij c_jk.
TripleDist compose_triple(const JointDist& theta_xy, const Channel& channel);

// XY and XZ have X on rows; YZ has Y on rows.
JointDist marginal_pair(const TripleDist& delta, Pair which);

// delta_ijk nu_j == theta_ij eta_jk within tol for every j with nu_j > 0.
bool is_conditionally_independent(const TripleDist& delta, double tol = 1e-12);

enum class Verdict { kPass, kFail, kInconclusive };

std::string_view to_string(Verdict v);

struct InequalityCheck {
  std::string_view name;
  double lhs = 0.0;
  double rhs = 0.0;    // min of the two right-hand terms
  double slack = 0.0;  // rhs - lhs
  Verdict verdict = Verdict::kPass;
};

struct DpiReport {
  bool conditionally_independent = false;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t l = 0;
  // Each report has its first named variable on rows, so for yz
  // phi_x_given_y is phi(Y|Z) and phi_y_given_x is phi(Z|Y).
  MixingReport xy;
  MixingReport yz;
  MixingReport xz;
  // mutual information, alpha, beta, phi(X|Z), phi(Z|X)
  std::array<InequalityCheck, 5> checks;

  bool all_pass() const;
};

inline constexpr double kDpiTolerance = 1e-9;

// Nine pairwise coefficients per family and the five data-processing
// inequalities. alpha is exact when every pair fits enum_limit; otherwise
// the alpha check uses bound intervals and may come back inconclusive.
DpiReport dpi_check(const TripleDist& delta, const MixingOptions& options = {},
                    double tol = kDpiTolerance);

}  // namespace mixkit

#endif  // MIXKIT_DPI_HPP_
