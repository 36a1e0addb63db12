#pragma once

#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace epsrw {

enum class ExecMode { serial, openmp };

// serial is the reference path; openmp fans independent indices out over a
// thread pool. Results must be written per-index so that both modes produce
// identical bits (the randomness is counter-based, so they do).
struct ExecPolicy {
  ExecMode mode = ExecMode::openmp;
  int workers = 0;  // 0 = library default
};

inline ExecPolicy serial_policy() { return {ExecMode::serial, 0}; }

template <class F>
void for_each_index(std::int64_t count, const ExecPolicy& policy, F&& body) {
  if (policy.mode == ExecMode::serial) {
    for (std::int64_t i = 0; i < count; ++i) body(i);
    return;
  }
#ifdef _OPENMP
  if (policy.workers > 0) {
#pragma omp parallel for schedule(dynamic, 16) num_threads(policy.workers)
    for (std::int64_t i = 0; i < count; ++i) body(i);
  } else {
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < count; ++i) body(i);
  }
#else
  for (std::int64_t i = 0; i < count; ++i) body(i);
#endif
}

}  // namespace epsrw
