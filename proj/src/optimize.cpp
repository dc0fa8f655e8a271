#include "ckstk/optimize.hpp"

#include <algorithm>
#include <cmath>

#include "ckstk/errors.hpp"

namespace ckstk {

namespace {

constexpr double kGolden = 0.6180339887498949;  // (sqrt(5)-1)/2

}  // namespace

OptimResult optimize_scalar(const std::function<double(double)>& objective,
                            OptimMode mode, double seed, double tol,
                            const OptimOptions& opt) {
  if (!(tol > 0.0)) throw InvalidTolerance("optimize_scalar: tol must be > 0");
  if (!(opt.lo_cap < opt.hi_cap))
    throw BadParam("optimize_scalar: empty abscissa range");

  int evals = 0;
  auto f = [&](double x) {
    const double raw = objective(x);
    ++evals;
    if (std::isnan(raw) || std::isinf(raw))
      throw NonFinite("optimize_scalar: objective non-finite at x=" +
                      std::to_string(x));
    return mode == OptimMode::Min ? raw : -raw;
  };

  double b = std::clamp(seed, opt.lo_cap, opt.hi_cap);
  double step = opt.initial_step;
  double a = std::max(b - step, opt.lo_cap);
  double c = std::min(b + step, opt.hi_cap);
  double fa = f(a), fb = f(b), fc = f(c);

  // Expand downhill until the middle point beats both ends.
  while (!(fb <= fa && fb <= fc)) {
    if (fa < fb) {
      if (a == opt.lo_cap)
        throw NoBracket("optimize_scalar: still improving at lower cap",
                        NoBracket::Side::Left);
      c = b; fc = fb;
      b = a; fb = fa;
      step *= 2.0;
      a = std::max(a - step, opt.lo_cap);
      fa = f(a);
    } else {
      if (c == opt.hi_cap)
        throw NoBracket("optimize_scalar: still improving at upper cap",
                        NoBracket::Side::Right);
      a = b; fa = fb;
      b = c; fb = fc;
      step *= 2.0;
      c = std::min(c + step, opt.hi_cap);
      fc = f(c);
    }
  }

  // Golden-section refinement on [a, c].
  double x1 = c - kGolden * (c - a);
  double x2 = a + kGolden * (c - a);
  double f1 = f(x1), f2 = f(x2);
  while (c - a > tol) {
    if (f1 < f2) {
      c = x2;
      x2 = x1; f2 = f1;
      x1 = c - kGolden * (c - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2; f1 = f2;
      x2 = a + kGolden * (c - a);
      f2 = f(x2);
    }
  }

  OptimResult res;
  res.arg_opt = f1 < f2 ? x1 : x2;
  const double best = std::min(f1, f2);
  res.value_opt = mode == OptimMode::Min ? best : -best;
  res.lo = a;
  res.hi = c;
  res.iterations = evals;
  return res;
}

}  // namespace ckstk
