#pragma once

#include "markt/similarity.hpp"

#include <exception>
#include <vector>

namespace markt::detail {

/// Runs body(i) for i in [0, n). With Execution::parallel the iterations are
/// shared among OpenMP threads; results must be written to per-index slots.
/// The first exception (by index) is rethrown after the loop.
template <class Body>
void for_each_index(std::size_t n, Execution execution, Body&& body) {
  std::vector<std::exception_ptr> errors(n);
  const long count = static_cast<long>(n);
  [[maybe_unused]] const bool parallel = execution == Execution::parallel;
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
  for (long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace markt::detail
