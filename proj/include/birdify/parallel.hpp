#pragma once

#include <cstddef>
#include <span>

namespace birdify {

/// Execution policy for the data-parallel kernels. Every kernel computes
/// output elements independently and reduces in a fixed order, so the two
/// policies produce bit-identical results; `serial` is the reference path
/// kept for testing and benchmarking.
enum class Exec { serial, parallel };

/// Deterministic pairwise (tree) summation in index order. Used for all
/// energy reductions so totals do not depend on thread count.
double pairwise_sum(std::span<const double> values);

}  // namespace birdify
