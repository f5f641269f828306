#include "mixkit/parallel.hpp"

#include <omp.h>

#include <charconv>
#include <cstdlib>
#include <cstring>
#include <string>

#include "mixkit/errors.hpp"

namespace mixkit {
namespace {

std::optional<int> threads_from_env() {
  const char* env = std::getenv("MIXKIT_THREADS");
  if (env == nullptr || *env == '\0') return std::nullopt;
  int value = 0;
  const char* end = env + std::strlen(env);
  const auto [ptr, ec] = std::from_chars(env, end, value);
  if (ec != std::errc() || ptr != end || value < 1) {
    throw InputError(std::string("MIXKIT_THREADS: expected a positive integer, got '") + env + "'");
  }
  return value;
}

}  // namespace

int configure_threads(std::optional<int> requested) {
  if (requested && *requested < 1) throw InputError("thread count must be positive");
  const std::optional<int> count = requested ? requested : threads_from_env();
  if (count) omp_set_num_threads(*count);
  return omp_get_max_threads();
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace mixkit
