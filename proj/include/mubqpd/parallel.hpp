#pragma once

#include <cstddef>
#include <exception>

#include <omp.h>

namespace mubqpd {

enum class Execution { serial, parallel };

/// Sets the OpenMP team size; n <= 0 keeps the runtime default.
inline void set_thread_count(int n) {
  if (n > 0) omp_set_num_threads(n);
}

/// Runs body(i) for i in [0, count). Results must be written to
/// index-addressed storage so the outcome does not depend on the schedule.
/// The first exception thrown by any iteration is rethrown on the caller.
template <class Body>
void for_each_index(std::size_t count, Execution exec, Body&& body) {
  if (exec == Execution::serial || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(mubqpd_for_each_index)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace mubqpd
