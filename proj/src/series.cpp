#include "ckstk/series.hpp"

#include <cmath>
#include <string>

#include "ckstk/errors.hpp"

namespace ckstk {

SeriesResult logsumexp_series(const std::function<LogValue(int)>& term_at,
                              double tol, int max_terms) {
  if (!(tol > 0.0)) throw InvalidTolerance("logsumexp_series: tol must be > 0");
  if (max_terms < 1) throw BadParam("logsumexp_series: max_terms must be >= 1");

  SeriesResult res;
  LogValue prev = LogValue::zero();
  int decreasing_run = 0;
  double last_ratio_log = 0.0;  // log of term(n)/term(n-1), valid once decreasing_run > 0

  for (int n = 0; n < max_terms; ++n) {
    const LogValue t = term_at(n);
    res.sum = res.sum + t;
    res.terms_used = n + 1;

    if (n > 0) {
      if (t.is_zero()) {
        // vanished term: tail of an eventually-zero or collapsing series
        ++decreasing_run;
        last_ratio_log = -std::numeric_limits<double>::infinity();
      } else if (prev.is_zero() || t >= prev) {
        decreasing_run = 0;
      } else {
        ++decreasing_run;
        last_ratio_log = t.log() - prev.log();
      }
    }
    prev = t;

    if (decreasing_run >= 3 || (decreasing_run >= 1 && t.is_zero())) {
      // tail <= t * q/(1-q) with q the last observed ratio
      if (last_ratio_log == -std::numeric_limits<double>::infinity()) {
        res.tail_bound = LogValue::zero();
      } else {
        const double q = std::exp(last_ratio_log);
        res.tail_bound = t * LogValue::from_real(q / (1.0 - q));
      }
      if (res.tail_bound.is_zero() ||
          res.tail_bound.log() - res.sum.log() <= std::log(tol)) {
        res.converged = true;
        return res;
      }
    }
  }

  if (decreasing_run == 0)
    throw NonDecreasingTail("logsumexp_series: terms still growing after " +
                            std::to_string(max_terms) + " terms");
  // decaying but not yet inside tolerance: report the partial sum honestly
  const double q = std::exp(last_ratio_log);
  res.tail_bound = prev * LogValue::from_real(q / (1.0 - q));
  res.converged = false;
  return res;
}

}  // namespace ckstk
