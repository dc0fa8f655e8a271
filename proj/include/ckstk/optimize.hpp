#pragma once

#include <functional>

namespace ckstk {

enum class OptimMode { Min, Max };

struct OptimResult {
  double arg_opt = 0.0;
  double value_opt = 0.0;  // objective value in its own scale (not negated)
  double lo = 0.0;         // final bracket
  double hi = 0.0;
  int iterations = 0;
};

struct OptimOptions {
  double lo_cap = -700.0;     // abscissa caps; keeps e^x representable
  double hi_cap = 700.0;
  double initial_step = 1.0;  // first bracket half-width, doubled on each expansion
};

// One-dimensional extremum search: expands a bracket geometrically from the
// seed until the midpoint beats both ends, then golden-section refines to
// |hi-lo| <= tol. Callers work on a transformed abscissa (x = log r) so that
// (log, exp)-convex objectives are convex and the bracket is certified.
// Throws NoBracket when expansion exhausts [lo_cap, hi_cap] while an edge is
// still improving, NonFinite if the objective returns NaN/inf.
OptimResult optimize_scalar(const std::function<double(double)>& objective,
                            OptimMode mode, double seed, double tol,
                            const OptimOptions& opt = {});

}  // namespace ckstk
