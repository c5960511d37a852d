#pragma once

#include <vector>

namespace halfint {

/** Dense square matrix, row-major. */
template <class C>
struct Mat {
  long n = 0;
  std::vector<C> a;

  Mat() = default;
  Mat(long n_, const C& proto) : n(n_), a((size_t)(n_ * n_), proto) {}

  C& at(long i, long j) { return a[(size_t)(i * n + j)]; }
  const C& at(long i, long j) const { return a[(size_t)(i * n + j)]; }
};

}  // namespace halfint
