#include "mixkit/dpi.hpp"

#include <algorithm>
#include <cmath>

#include "mixkit/errors.hpp"

namespace mixkit {
namespace {

void require_nonnegative(const double* v, std::size_t size, const char* what) {
  for (std::size_t k = 0; k < size; ++k) {
    if (!std::isfinite(v[k]) || v[k] < 0.0) {
      throw InputError(std::string(what) + ": entries must be finite and nonnegative");
    }
  }
}

InequalityCheck point_check(std::string_view name, double lhs, double a, double b, double tol) {
  InequalityCheck c;
  c.name = name;
  c.lhs = lhs;
  c.rhs = std::min(a, b);
  c.slack = c.rhs - c.lhs;
  c.verdict = c.slack >= -tol ? Verdict::kPass : Verdict::kFail;
  return c;
}

InequalityCheck alpha_check(const DpiReport& r, double tol) {
  if (r.xy.alpha_is_exact && r.yz.alpha_is_exact && r.xz.alpha_is_exact) {
    return point_check("alpha", r.xz.alpha_lower, r.xy.alpha_lower, r.yz.alpha_lower, tol);
  }
  InequalityCheck c;
  c.name = "alpha";
  c.lhs = r.xz.alpha_upper;
  c.rhs = std::min(r.xy.alpha_lower, r.yz.alpha_lower);
  c.slack = c.rhs - c.lhs;
  if (c.slack >= -tol) {
    c.verdict = Verdict::kPass;
  } else if (r.xz.alpha_lower > std::min(r.xy.alpha_upper, r.yz.alpha_upper) + tol) {
    c.verdict = Verdict::kFail;
  } else {
    c.verdict = Verdict::kInconclusive;
  }
  return c;
}

}  // namespace

Channel::Channel(Eigen::MatrixXd rows) : c_(std::move(rows)) {
  if (c_.size() == 0) throw InputError("Channel: empty matrix");
  require_nonnegative(c_.data(), static_cast<std::size_t>(c_.size()), "Channel");
  for (Eigen::Index j = 0; j < c_.rows(); ++j) {
    const double s = c_.row(j).sum();
    const double drift = std::abs(s - 1.0);
    if (drift > kNormalizeTolerance) {
      throw InputError("Channel: row " + std::to_string(j) + " sums to " + std::to_string(s));
    }
    if (drift > kSumTolerance) c_.row(j) /= s;
  }
}

Channel Channel::identity(std::size_t m) {
  const auto e = static_cast<Eigen::Index>(m);
  return Channel(Eigen::MatrixXd::Identity(e, e));
}

Channel Channel::constant(std::size_t m, const ProbVector& rho) {
  Eigen::MatrixXd c(static_cast<Eigen::Index>(m), rho.weights().size());
  for (Eigen::Index j = 0; j < c.rows(); ++j) c.row(j) = rho.weights().transpose();
  return Channel(std::move(c));
}

TripleDist::TripleDist(std::size_t n, std::size_t m, std::size_t l, std::vector<double> values)
    : n_(n), m_(m), l_(l), values_(std::move(values)) {
  if (n == 0 || m == 0 || l == 0) throw InputError("TripleDist: dimensions must be positive");
  if (values_.size() != n * m * l) throw InputError("TripleDist: value count does not match n*m*l");
  require_nonnegative(values_.data(), values_.size(), "TripleDist");
  double total = 0.0;
  for (double v : values_) total += v;
  const double drift = std::abs(total - 1.0);
  if (drift > kNormalizeTolerance) {
    throw InputError("TripleDist: probabilities sum to " + std::to_string(total));
  }
  if (drift > kSumTolerance) {
    for (double& v : values_) v /= total;
  }
}

TripleDist TripleDist::swap_outer() const {
  std::vector<double> out(values_.size());
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < m_; ++j) {
      for (std::size_t k = 0; k < l_; ++k) out[(k * m_ + j) * n_ + i] = (*this)(i, j, k);
    }
  }
  return TripleDist(l_, m_, n_, std::move(out));
}

TripleDist compose_triple(const JointDist& theta_xy, const Channel& channel) {
  if (channel.inputs() != theta_xy.cols()) {
    throw InputError("compose_triple: channel has " + std::to_string(channel.inputs()) +
                     " rows but the joint has " + std::to_string(theta_xy.cols()) + " columns");
  }
  const std::size_t n = theta_xy.rows();
  const std::size_t m = theta_xy.cols();
  const std::size_t l = channel.outputs();
  const Eigen::MatrixXd& c = channel.matrix();
  std::vector<double> values(n * m * l);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t k = 0; k < l; ++k) {
        values[(i * m + j) * l + k] =
            theta_xy(i, j) * c(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k));
      }
    }
  }
  return TripleDist(n, m, l, std::move(values));
}

JointDist marginal_pair(const TripleDist& delta, Pair which) {
  const std::size_t n = delta.n();
  const std::size_t m = delta.m();
  const std::size_t l = delta.l();
  Eigen::MatrixXd out;
  switch (which) {
    case Pair::kXY: out = Eigen::MatrixXd::Zero(n, m); break;
    case Pair::kYZ: out = Eigen::MatrixXd::Zero(m, l); break;
    case Pair::kXZ: out = Eigen::MatrixXd::Zero(n, l); break;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t k = 0; k < l; ++k) {
        const double v = delta(i, j, k);
        switch (which) {
          case Pair::kXY: out(i, j) += v; break;
          case Pair::kYZ: out(j, k) += v; break;
          case Pair::kXZ: out(i, k) += v; break;
        }
      }
    }
  }
  return JointDist(std::move(out));
}

bool is_conditionally_independent(const TripleDist& delta, double tol) {
  const JointDist theta = marginal_pair(delta, Pair::kXY);
  const JointDist eta = marginal_pair(delta, Pair::kYZ);
  const Eigen::VectorXd nu = theta.matrix().colwise().sum().transpose();
  for (std::size_t j = 0; j < delta.m(); ++j) {
    const double nu_j = nu(static_cast<Eigen::Index>(j));
    if (nu_j <= 0.0) continue;
    for (std::size_t i = 0; i < delta.n(); ++i) {
      for (std::size_t k = 0; k < delta.l(); ++k) {
        if (std::abs(delta(i, j, k) * nu_j - theta(i, j) * eta(j, k)) > tol) return false;
      }
    }
  }
  return true;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kPass: return "pass";
    case Verdict::kFail: return "fail";
    case Verdict::kInconclusive: return "inconclusive";
  }
  return "unknown";
}

bool DpiReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const InequalityCheck& c) { return c.verdict == Verdict::kPass; });
}

DpiReport dpi_check(const TripleDist& delta, const MixingOptions& options, double tol) {
  DpiReport r;
  r.n = delta.n();
  r.m = delta.m();
  r.l = delta.l();
  r.conditionally_independent = is_conditionally_independent(delta);
  r.xy = mixing_report(marginal_pair(delta, Pair::kXY), options);
  r.yz = mixing_report(marginal_pair(delta, Pair::kYZ), options);
  r.xz = mixing_report(marginal_pair(delta, Pair::kXZ), options);

  r.checks[0] = point_check("mutual_information", r.xz.mutual_information,
                            r.xy.mutual_information, r.yz.mutual_information, tol);
  r.checks[1] = alpha_check(r, tol);
  r.checks[2] = point_check("beta", r.xz.beta, r.xy.beta, r.yz.beta, tol);
  // phi(X|Z) <= min(phi(X|Y), phi(Y|Z))
  r.checks[3] = point_check("phi_x_given_z", r.xz.phi_x_given_y, r.xy.phi_x_given_y,
                            r.yz.phi_x_given_y, tol);
  // phi(Z|X) <= min(phi(Z|Y), phi(Y|X))
  r.checks[4] = point_check("phi_z_given_x", r.xz.phi_y_given_x, r.yz.phi_y_given_x,
                            r.xy.phi_y_given_x, tol);
  return r;
}

}  // namespace mixkit
