#include <cmath>
#include <limits>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "mixkit/alpha_bounds.hpp"
#include "mixkit/errors.hpp"

namespace mixkit {
namespace {

constexpr double kBarrierShrink = 0.25;  // mu <- 0.25 mu, i.e. t <- 4 t
constexpr double kCenteringTol = 1e-9;   // lambda^2 / 2 at which a stage is centered
constexpr double kArmijo = 0.25;

// Block matrix [Diag(x) G^t; G Diag(y)] with d = (x, y) on the diagonal.
class BarrierProblem {
 public:
  explicit BarrierProblem(const Eigen::MatrixXd& g)
      : g_(g), cols_(g.cols()), size_(g.rows() + g.cols()), base_(size_, size_) {
    base_.setZero();
    base_.topRightCorner(cols_, g.rows()) = g.transpose();
    base_.bottomLeftCorner(g.rows(), cols_) = g;
  }

  Eigen::Index size() const { return size_; }

  Eigen::MatrixXd assemble(const Eigen::VectorXd& d) const {
    Eigen::MatrixXd m = base_;
    m.diagonal() = d;
    return m;
  }

  // log det M(d), or NaN when M(d) is not positive definite.
  double log_det(const Eigen::VectorXd& d, Eigen::LLT<Eigen::MatrixXd>& llt) const {
    llt.compute(assemble(d));
    if (llt.info() != Eigen::Success) return std::numeric_limits<double>::quiet_NaN();
    const auto l = llt.matrixLLT().diagonal();
    double s = 0.0;
    for (Eigen::Index k = 0; k < l.size(); ++k) {
      if (!(l(k) > 0.0)) return std::numeric_limits<double>::quiet_NaN();
      s += std::log(l(k));
    }
    return 2.0 * s;
  }

  // Objective of the dual point obtained by rescaling inv(M)/t to have
  // diagonal exactly 0.5; always a valid lower bound on the optimum.
  double dual_value(const Eigen::MatrixXd& inverse) const {
    Eigen::VectorXd scale(size_);
    for (Eigen::Index k = 0; k < size_; ++k) scale(k) = std::sqrt(0.5 / inverse(k, k));
    double inner = 0.0;
    for (Eigen::Index j = 0; j < cols_; ++j) {
      for (Eigen::Index i = 0; i < g_.rows(); ++i) {
        inner += g_(i, j) * inverse(cols_ + i, j) * scale(cols_ + i) * scale(j);
      }
    }
    return -2.0 * inner;
  }

 private:
  const Eigen::MatrixXd& g_;
  Eigen::Index cols_;
  Eigen::Index size_;
  Eigen::MatrixXd base_;
};

double min_eigenvalue(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

}  // namespace

SdpResult solve_nesterov(const GammaMatrix& gamma, const SdpOptions& options) {
  if (!(options.tol > 0.0)) throw InputError("solve_nesterov: tol must be positive");
  const double scale = gamma.matrix().cwiseAbs().maxCoeff();
  if (scale == 0.0) return {};

  const Eigen::MatrixXd g = gamma.matrix() / scale;
  const BarrierProblem problem(g);
  const Eigen::Index n = problem.size();
  const Eigen::Index cols = g.cols();

  // Row/column l1 norms plus one make M strictly diagonally dominant.
  Eigen::VectorXd d(n);
  d.head(cols) = g.cwiseAbs().colwise().sum().transpose().array() + 1.0;
  d.tail(g.rows()) = g.cwiseAbs().rowwise().sum().array() + 1.0;

  auto objective = [](const Eigen::VectorXd& v) { return 0.5 * v.sum(); };

  Eigen::LLT<Eigen::MatrixXd> llt;
  double log_det = problem.log_det(d, llt);
  double t = static_cast<double>(n) / objective(d);
  std::size_t steps = 0;
  Eigen::MatrixXd inverse;
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(n, n);

  auto fail = [&](const char* why) -> SolverError {
    const double margin = scale * min_eigenvalue(problem.assemble(d));
    return SolverError(why, scale * objective(d), margin);
  };

  while (true) {
    // Centering at the current t.
    while (true) {
      inverse = llt.solve(identity);
      const Eigen::VectorXd grad = (0.5 * t) - inverse.diagonal().array();
      const Eigen::MatrixXd hess = inverse.cwiseProduct(inverse);
      Eigen::LLT<Eigen::MatrixXd> hess_llt(hess);
      if (hess_llt.info() != Eigen::Success) throw fail("solve_nesterov: singular Newton system");
      const Eigen::VectorXd delta = -hess_llt.solve(grad);
      const double decrement = -grad.dot(delta);
      if (decrement / 2.0 <= kCenteringTol) break;
      if (steps == options.max_newton) {
        throw fail("solve_nesterov: Newton step budget exhausted");
      }
      ++steps;

      const double value = t * objective(d) - log_det;
      // A decrease below the rounding level of the barrier value cannot be
      // certified by the line search.
      if (value - kArmijo * decrement == value) break;
      double step = 1.0;
      Eigen::LLT<Eigen::MatrixXd> trial_llt;
      bool moved = false;
      while (step > 1e-14) {
        const Eigen::VectorXd trial = d + step * delta;
        const double trial_log_det = problem.log_det(trial, trial_llt);
        const double trial_value = t * objective(trial) - trial_log_det;
        if (!std::isnan(trial_log_det) && trial_value < value &&
            trial_value <= value - kArmijo * step * decrement) {
          d = trial;
          log_det = trial_log_det;
          llt = std::move(trial_llt);
          moved = true;
          break;
        }
        step *= 0.5;
      }
      if (!moved) break;  // stalled at rounding level; treat as centered
    }

    const double primal = objective(d);
    const double dual = problem.dual_value(inverse);
    if (primal - dual <= options.tol * primal) {
      SdpResult r;
      r.value = scale * primal;
      r.dual_value = scale * std::max(dual, 0.0);
      r.min_eigenvalue = scale * min_eigenvalue(problem.assemble(d));
      r.newton_steps = steps;
      return r;
    }
    if (static_cast<double>(n) / t < 1e-3 * std::numeric_limits<double>::epsilon() * primal) {
      throw fail("solve_nesterov: duality gap stalled above tolerance");
    }
    t /= kBarrierShrink;
  }
}

double nesterov_c(const GammaMatrix& gamma, double tol) {
  SdpOptions options;
  options.tol = tol;
  return solve_nesterov(gamma, options).value;
}

}  // namespace mixkit
