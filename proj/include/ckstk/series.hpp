#pragma once

#include <functional>

#include "ckstk/log_value.hpp"

namespace ckstk {

struct SeriesResult {
  LogValue sum;
  int terms_used = 0;
  LogValue tail_bound;       // geometric majorant from the last observed ratio
  bool converged = false;    // tail_bound/sum <= requested tolerance
};

// Sums a nonnegative series in the log domain with a running log-sum-exp.
// The caller guarantees the terms are eventually decreasing with ratio
// bounded away from 1 (true for entire-function series inside their safe
// range). Stops once the last-ratio geometric tail bound drops below
// tol * sum; throws NonDecreasingTail if the budget runs out while terms are
// still growing, returns converged=false if it runs out during decay.
SeriesResult logsumexp_series(const std::function<LogValue(int)>& term_at,
                              double tol, int max_terms);

}  // namespace ckstk
