#ifndef MIXKIT_PARALLEL_HPP_
#define MIXKIT_PARALLEL_HPP_

#include <optional>

namespace mixkit {

// Thread count for the OpenMP kernels: the explicit request if given, else
// MIXKIT_THREADS, else the OpenMP default. Returns the count in effect.
int configure_threads(std::optional<int> requested = std::nullopt);

int max_threads();

}  // namespace mixkit

#endif  // MIXKIT_PARALLEL_HPP_
