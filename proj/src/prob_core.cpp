#include "mixkit/prob_core.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "mixkit/errors.hpp"

namespace mixkit {
namespace {

template <typename Derived>
void check_entries(const Eigen::DenseBase<Derived>& values, const char* what) {
  if (values.size() == 0) {
    throw InputError(std::string(what) + ": empty distribution");
  }
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    const double v = values.derived().data()[k];
    if (!std::isfinite(v)) {
      throw InputError(std::string(what) + ": non-finite probability");
    }
    if (v < 0.0) {
      throw InputError(std::string(what) + ": negative probability " + std::to_string(v));
    }
  }
}

template <typename Derived>
void normalize_in_place(Eigen::PlainObjectBase<Derived>& values, const char* what) {
  const double total = values.sum();
  const double drift = std::abs(total - 1.0);
  if (drift > kNormalizeTolerance) {
    throw InputError(std::string(what) + ": probabilities sum to " + std::to_string(total) +
                     ", outside the 1e-9 normalization tolerance");
  }
  if (drift > kSumTolerance) {
    values /= total;
  }
}

double plogp_sum(const double* data, Eigen::Index size) {
  double h = 0.0;
  for (Eigen::Index k = 0; k < size; ++k) {
    const double p = data[k];
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

double kl_sum(const double* p, const double* q, Eigen::Index size) {
  double d = 0.0;
  for (Eigen::Index k = 0; k < size; ++k) {
    if (p[k] == 0.0) continue;
    if (q[k] == 0.0) return std::numeric_limits<double>::infinity();
    d += p[k] * std::log(p[k] / q[k]);
  }
  return d;
}

}  // namespace

ProbVector::ProbVector(Eigen::VectorXd weights) : weights_(std::move(weights)) {
  check_entries(weights_, "ProbVector");
  normalize_in_place(weights_, "ProbVector");
}

ProbVector::ProbVector(std::span<const double> weights)
    : ProbVector(Eigen::VectorXd(
          Eigen::Map<const Eigen::VectorXd>(weights.data(), static_cast<Eigen::Index>(weights.size())))) {}

ProbVector::ProbVector(std::initializer_list<double> weights)
    : ProbVector(std::span<const double>(weights.begin(), weights.size())) {}

JointDist::JointDist(Eigen::MatrixXd probabilities) : p_(std::move(probabilities)) {
  check_entries(p_, "JointDist");
  normalize_in_place(p_, "JointDist");
}

namespace {
Eigen::MatrixXd from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto m = n == 0 ? 0 : static_cast<Eigen::Index>(rows.begin()->size());
  Eigen::MatrixXd out(n, m);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    if (static_cast<Eigen::Index>(row.size()) != m) {
      throw InputError("JointDist: ragged rows");
    }
    Eigen::Index j = 0;
    for (double v : row) out(i, j++) = v;
    ++i;
  }
  return out;
}
}  // namespace

JointDist::JointDist(std::initializer_list<std::initializer_list<double>> rows)
    : JointDist(from_rows(rows)) {}

GammaMatrix::GammaMatrix(Eigen::MatrixXd gamma) : g_(std::move(gamma)) {
  if (g_.size() == 0) throw InputError("GammaMatrix: empty matrix");
  if (!g_.allFinite()) throw InputError("GammaMatrix: non-finite entry");
  const double scale = std::max(1.0, g_.cwiseAbs().maxCoeff());
  const double row_err = g_.rowwise().sum().cwiseAbs().maxCoeff();
  const double col_err = g_.colwise().sum().cwiseAbs().maxCoeff();
  if (row_err > kSumTolerance * scale || col_err > kSumTolerance * scale) {
    throw InputError("GammaMatrix: rows and columns must sum to zero");
  }
}

std::pair<ProbVector, ProbVector> marginals(const JointDist& theta) {
  return {ProbVector(Eigen::VectorXd(theta.matrix().rowwise().sum())),
          ProbVector(Eigen::VectorXd(theta.matrix().colwise().sum().transpose()))};
}

JointDist product(const ProbVector& mu, const ProbVector& nu) {
  return JointDist(Eigen::MatrixXd(mu.weights() * nu.weights().transpose()));
}

JointDist transpose(const JointDist& theta) {
  return JointDist(Eigen::MatrixXd(theta.matrix().transpose()));
}

double total_variation(const ProbVector& p, const ProbVector& q) {
  if (p.size() != q.size()) throw InputError("total_variation: length mismatch");
  return 0.5 * (p.weights() - q.weights()).cwiseAbs().sum();
}

double total_variation(const JointDist& p, const JointDist& q) {
  if (p.rows() != q.rows() || p.cols() != q.cols()) {
    throw InputError("total_variation: shape mismatch");
  }
  return 0.5 * (p.matrix() - q.matrix()).cwiseAbs().sum();
}

double entropy(const ProbVector& p) {
  return plogp_sum(p.weights().data(), p.weights().size());
}

double entropy(const JointDist& theta) {
  return plogp_sum(theta.matrix().data(), theta.matrix().size());
}

double mutual_information(const JointDist& theta) {
  const auto [mu, nu] = marginals(theta);
  return entropy(mu) + entropy(nu) - entropy(theta);
}

double kl_divergence(const ProbVector& p, const ProbVector& q) {
  if (p.size() != q.size()) throw InputError("kl_divergence: length mismatch");
  return kl_sum(p.weights().data(), q.weights().data(), p.weights().size());
}

double kl_divergence(const JointDist& p, const JointDist& q) {
  if (p.rows() != q.rows() || p.cols() != q.cols()) {
    throw InputError("kl_divergence: shape mismatch");
  }
  return kl_sum(p.matrix().data(), q.matrix().data(), p.matrix().size());
}

bool is_infinite_divergence(double d) { return std::isinf(d) && d > 0.0; }

GammaMatrix gamma_matrix(const JointDist& theta) {
  const auto [mu, nu] = marginals(theta);
  return GammaMatrix(theta.matrix() - mu.weights() * nu.weights().transpose());
}

}  // namespace mixkit
