#ifndef MIXKIT_PROB_CORE_HPP_
#define MIXKIT_PROB_CORE_HPP_

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace mixkit {

// Construction accepts totals within kNormalizeTolerance of 1 and rescales
// anything farther than kSumTolerance from 1. Larger drift is rejected.
inline constexpr double kSumTolerance = 1e-12;
inline constexpr double kNormalizeTolerance = 1e-9;

// A probability distribution on {0, ..., n-1}.
class ProbVector {
 public:
  explicit ProbVector(Eigen::VectorXd weights);
  explicit ProbVector(std::span<const double> weights);
  ProbVector(std::initializer_list<double> weights);

  std::size_t size() const { return static_cast<std::size_t>(weights_.size()); }
  double operator[](std::size_t i) const { return weights_(static_cast<Eigen::Index>(i)); }
  const Eigen::VectorXd& weights() const { return weights_; }

 private:
  Eigen::VectorXd weights_;
};

// Joint distribution of (X, Y): rows index outcomes of X, columns outcomes
// of Y.
class JointDist {
 public:
  explicit JointDist(Eigen::MatrixXd probabilities);
  JointDist(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const { return static_cast<std::size_t>(p_.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(p_.cols()); }
  double operator()(std::size_t i, std::size_t j) const {
    return p_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  const Eigen::MatrixXd& matrix() const { return p_; }

 private:
  Eigen::MatrixXd p_;
};

// Gamma = Theta - mu nu^t. Row and column sums vanish.
class GammaMatrix {
 public:
  // Validates the zero row/column sum invariant (relative to the largest
  // entry) and throws InputError otherwise.
  explicit GammaMatrix(Eigen::MatrixXd gamma);

  std::size_t rows() const { return static_cast<std::size_t>(g_.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(g_.cols()); }
  double operator()(std::size_t i, std::size_t j) const {
    return g_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  const Eigen::MatrixXd& matrix() const { return g_; }

 private:
  Eigen::MatrixXd g_;
};

std::pair<ProbVector, ProbVector> marginals(const JointDist& theta);
JointDist product(const ProbVector& mu, const ProbVector& nu);
JointDist transpose(const JointDist& theta);

// 0.5 * ||p - q||_1. Throws InputError on shape mismatch.
double total_variation(const ProbVector& p, const ProbVector& q);
double total_variation(const JointDist& p, const JointDist& q);

// All information quantities are in nats, with 0 log 0 = 0.
double entropy(const ProbVector& p);
double entropy(const JointDist& theta);
double mutual_information(const JointDist& theta);

// Returns +infinity when q assigns zero mass where p does not; test with
// is_infinite_divergence().
double kl_divergence(const ProbVector& p, const ProbVector& q);
double kl_divergence(const JointDist& p, const JointDist& q);
bool is_infinite_divergence(double d);

GammaMatrix gamma_matrix(const JointDist& theta);

}  // namespace mixkit

#endif  // MIXKIT_PROB_CORE_HPP_
