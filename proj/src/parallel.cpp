#include "birdify/parallel.hpp"

namespace birdify {

namespace {

double sum_range(std::span<const double> v, std::size_t lo, std::size_t hi) {
  const std::size_t n = hi - lo;
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += v[i];
    return s;
  }
  const std::size_t mid = lo + n / 2;
  return sum_range(v, lo, mid) + sum_range(v, mid, hi);
}

}  // namespace

double pairwise_sum(std::span<const double> values) {
  return sum_range(values, 0, values.size());
}

}  // namespace birdify
