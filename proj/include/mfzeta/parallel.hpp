#pragma once

#include <cstddef>
#include <exception>

namespace mfzeta {

/// Fixed partition count for parallel reductions. Partial results are merged
/// in chunk order, so output does not depend on the OpenMP thread count.
inline constexpr std::ptrdiff_t kReductionChunks = 64;

/// Half-open index range of chunk `c` out of `chunks` over [0, n).
struct ChunkRange {
  std::ptrdiff_t begin;
  std::ptrdiff_t end;
};

inline ChunkRange chunk_range(std::ptrdiff_t n, std::ptrdiff_t chunks, std::ptrdiff_t c) {
  return {n * c / chunks, n * (c + 1) / chunks};
}

/// `#pragma omp parallel for` over [0, n). The first exception thrown by any
/// iteration is rethrown on the calling thread after the loop.
template <class F>
void omp_for(std::ptrdiff_t n, F&& body) {
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
#pragma omp critical(mfzeta_omp_for_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace mfzeta
