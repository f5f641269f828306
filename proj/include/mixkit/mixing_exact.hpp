#ifndef MIXKIT_MIXING_EXACT_HPP_
#define MIXKIT_MIXING_EXACT_HPP_

#include <cstddef>
#include <cstdint>

#include "mixkit/alpha_bounds.hpp"
#include "mixkit/prob_core.hpp"

namespace mixkit {

inline constexpr std::size_t kDefaultEnumLimit = 24;
inline constexpr std::size_t kBruteForceLimit = 24;  // on n + m

// Orientation convention: rows are X, columns are Y. phi() is phi(X|Y),
// conditioning on the column variable; phi_reverse() is phi(Y|X).

// 0.5 * sum_ij |gamma_ij|.
double beta(const JointDist& theta);

// max_j (1 / nu_j) sum_i (gamma_ij)_+ over columns with nu_j > 0.
double phi(const JointDist& theta);

// phi of the transposed joint, rows with mu_i = 0 dropped.
double phi_reverse(const JointDist& theta);

// 0.5 * max_{b in {0,1}^m} ||Gamma b||_1, enumerating the smaller side.
// Throws SizeRefusal when min(n, m) > enum_limit; use alpha_bounds() instead.
double alpha_exact(const JointDist& theta, std::size_t enum_limit = kDefaultEnumLimit);

// Same as alpha_exact but through the serial reference kernel.
double alpha_exact_serial(const JointDist& theta, std::size_t enum_limit = kDefaultEnumLimit);

// Direct double enumeration of max_{S,T} |P(S x T) - P(S) P(T)| from theta
// and its marginals; independent of the Gamma path. Requires n + m <= 24.
double alpha_bruteforce(const JointDist& theta);

struct MixingOptions {
  std::size_t enum_limit = kDefaultEnumLimit;
  BoundsOptions bounds;
};

struct MixingReport {
  double alpha_lower = 0.0;
  double alpha_upper = 0.0;
  bool alpha_is_exact = false;
  double beta = 0.0;
  double phi_x_given_y = 0.0;
  double phi_y_given_x = 0.0;
  double mutual_information = 0.0;

  double alpha() const { return alpha_is_exact ? alpha_lower : 0.5 * (alpha_lower + alpha_upper); }

  bool operator==(const MixingReport&) const = default;
};

// 2 alpha <= beta <= min(phi) <= max(phi) <= 1 and alpha <= 0.25, within
// tol. With an interval alpha, the lower end is checked.
bool satisfies_chain(const MixingReport& report, double tol = 1e-9);

// Exact alpha when min(n, m) <= enum_limit, otherwise the alpha_bounds
// interval.
MixingReport mixing_report(const JointDist& theta, const MixingOptions& options = {});

}  // namespace mixkit

#endif  // MIXKIT_MIXING_EXACT_HPP_
