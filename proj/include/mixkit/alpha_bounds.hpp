#ifndef MIXKIT_ALPHA_BOUNDS_HPP_
#define MIXKIT_ALPHA_BOUNDS_HPP_

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "mixkit/prob_core.hpp"

namespace mixkit {

inline constexpr std::uint64_t kDefaultSeed = 20110715;

// Lower sandwich constant for c(Gamma), used verbatim (0.25 / 2.3 rounds to
// 0.10869...).
inline constexpr double kSdpLowerFactor = 0.1086;
inline constexpr double kSdpUpperFactor = 0.25;

struct SdpOptions {
  double tol = 1e-6;             // relative duality gap at exit
  std::size_t max_newton = 200;  // total Newton steps across all barrier stages
};

struct SdpResult {
  double value = 0.0;            // primal objective at a strictly feasible point (>= c)
  double dual_value = 0.0;       // objective of a dual-feasible point (<= c)
  double min_eigenvalue = 0.0;   // smallest eigenvalue of the block matrix at the primal point
  std::size_t newton_steps = 0;
};

// c(Gamma) = 0.5 * min sum(x) + sum(y) subject to
//   [ Diag(x)  Gamma^t ]
//   [ Gamma    Diag(y) ]  positive semidefinite,
// solved with a log-det barrier and damped Newton steps. Throws SolverError
// (carrying the current primal value) if max_newton is exhausted.
SdpResult solve_nesterov(const GammaMatrix& gamma, const SdpOptions& options = {});

// Primal value of solve_nesterov.
double nesterov_c(const GammaMatrix& gamma, double tol = 1e-6);

// 0.25 * ||Gamma z||_1 for the best sign vector found by greedy flips.
double alpha_lower_localsearch(const GammaMatrix& gamma, std::size_t restarts,
                               std::uint64_t seed = kDefaultSeed);

struct BoundsOptions {
  std::size_t restarts = 16;
  std::uint64_t seed = kDefaultSeed;
  SdpOptions sdp;
};

enum class BoundSource { kLocalSearch, kSdp, kBetaCap, kPinskerCap, kTrivial };

std::string_view to_string(BoundSource source);

struct AlphaBounds {
  double lower = 0.0;
  double upper = 0.25;
  double c_gamma = 0.0;        // primal SDP value (certifies the upper cap)
  double c_gamma_dual = 0.0;   // dual SDP value (certifies the lower cap)
  double local_search_value = 0.0;
  double sdp_lower = 0.0;      // 0.1086 * c_gamma_dual
  double sdp_upper = 0.25;     // 0.25 * c_gamma
  double beta_cap = 0.25;      // beta / 2
  double pinsker_cap = 0.25;   // sqrt(I / 2) / 2
  BoundSource lower_source = BoundSource::kTrivial;
  BoundSource upper_source = BoundSource::kTrivial;
  bool sdp_converged = false;
  std::size_t newton_steps = 0;
  double feasibility_margin = 0.0;
  bool flip_cap_hit = false;
};

// lower = max(local search, 0.1086 c); upper = min(0.25 c, beta/2,
// sqrt(I/2)/2, 0.25). If the SDP fails to converge its last feasible point
// still caps alpha from above, and the SDP lower term is dropped.
AlphaBounds alpha_bounds(const JointDist& theta, const BoundsOptions& options = {});

}  // namespace mixkit

#endif  // MIXKIT_ALPHA_BOUNDS_HPP_
