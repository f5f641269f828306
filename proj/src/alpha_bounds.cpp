#include "mixkit/alpha_bounds.hpp"

#include <algorithm>
#include <cmath>

#include "mixkit/errors.hpp"
#include "mixkit/kernels.hpp"
#include "mixkit/mixing_exact.hpp"

namespace mixkit {

std::string_view to_string(BoundSource source) {
  switch (source) {
    case BoundSource::kLocalSearch: return "local_search";
    case BoundSource::kSdp: return "sdp";
    case BoundSource::kBetaCap: return "beta_cap";
    case BoundSource::kPinskerCap: return "pinsker_cap";
    case BoundSource::kTrivial: return "trivial";
  }
  return "unknown";
}

double alpha_lower_localsearch(const GammaMatrix& gamma, std::size_t restarts,
                               std::uint64_t seed) {
  return 0.25 * kernels::sign_search_parallel(gamma.matrix(), restarts, seed).l1_norm;
}

AlphaBounds alpha_bounds(const JointDist& theta, const BoundsOptions& options) {
  AlphaBounds b;
  const GammaMatrix gamma = gamma_matrix(theta);

  const auto search = kernels::sign_search_parallel(gamma.matrix(), options.restarts, options.seed);
  b.local_search_value = 0.25 * search.l1_norm;
  b.flip_cap_hit = search.flip_cap_hit;

  try {
    const SdpResult sdp = solve_nesterov(gamma, options.sdp);
    b.c_gamma = sdp.value;
    b.c_gamma_dual = sdp.dual_value;
    b.newton_steps = sdp.newton_steps;
    b.feasibility_margin = sdp.min_eigenvalue;
    b.sdp_converged = true;
    b.sdp_lower = kSdpLowerFactor * sdp.dual_value;
    b.sdp_upper = kSdpUpperFactor * sdp.value;
  } catch (const SolverError& e) {
    b.c_gamma = e.best_feasible_value();
    b.feasibility_margin = e.feasibility_margin();
    b.sdp_converged = false;
    b.sdp_lower = 0.0;
    b.sdp_upper = e.feasibility_margin() >= 0.0 ? kSdpUpperFactor * e.best_feasible_value() : 0.25;
  }

  b.beta_cap = 0.5 * beta(theta);
  const auto [mu, nu] = marginals(theta);
  const double information = std::max(0.0, kl_divergence(theta, product(mu, nu)));
  b.pinsker_cap = 0.5 * std::sqrt(0.5 * information);

  b.lower = b.local_search_value;
  b.lower_source = BoundSource::kLocalSearch;
  if (b.sdp_lower > b.lower) {
    b.lower = b.sdp_lower;
    b.lower_source = BoundSource::kSdp;
  }

  b.upper = 0.25;
  b.upper_source = BoundSource::kTrivial;
  const std::pair<double, BoundSource> caps[] = {{b.sdp_upper, BoundSource::kSdp},
                                                 {b.beta_cap, BoundSource::kBetaCap},
                                                 {b.pinsker_cap, BoundSource::kPinskerCap}};
  for (const auto& [cap, source] : caps) {
    if (cap < b.upper) {
      b.upper = cap;
      b.upper_source = source;
    }
  }
  // The local-search value is a certified alpha, so a cap that rounding put
  // below it is lifted to meet it.
  b.upper = std::max(b.upper, b.lower);
  return b;
}

}  // namespace mixkit
