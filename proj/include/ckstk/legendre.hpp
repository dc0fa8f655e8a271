#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ckstk/classes.hpp"
#include "ckstk/growth.hpp"
#include "ckstk/log_value.hpp"
#include "ckstk/series.hpp"

namespace ckstk {

// {log ell_u(n)}_{n=0..N} with the minimizing abscissas. Construction
// warm-starts each minimization from the previous argmin (nondecreasing in t
// for increasing u).
struct LegendreTable {
  GrowthFunction source;
  int n_max = 0;
  std::vector<LogValue> log_ell;
  std::vector<double> argmin_r;
  bool certified_convex = false;     // unimodality certified via (log, exp)-convexity
  std::optional<int> abort_at;       // set when evaluation failed and the table was truncated
};

struct LegendreOptions {
  double x_tol = 1e-9;      // abscissa tolerance in x = log r
  double series_tol = 1e-12;
};

// log ell_u(t) = min over x of (log u(e^x) - t x). The infimum at t = 0 uses
// the boundary rule inf u = u(0) for functions claiming to be increasing, a
// grid scan plus polish otherwise.
LogValue legendre_at(const GrowthFunction& u, double t,
                     std::optional<double> seed_log_r = std::nullopt,
                     const LegendreOptions& opt = {});

LegendreTable legendre_table(const GrowthFunction& u, int n_max,
                             const LegendreOptions& opt = {});

// log u*(r) = max over s >= 0 of (2 sqrt(r s) - log u(s)).
LogValue dual_legendre_at(const GrowthFunction& u, double r,
                          const LegendreOptions& opt = {});

// u* materialized as a growth function so every u-operation composes with
// duals. Catalog closed forms override the numeric path unless told otherwise.
GrowthFunction dual_as_growth(const GrowthFunction& u,
                              bool prefer_closed_form = true);

// Entire-series evaluations backed by a table.
SeriesResult l_function_at(const LegendreTable& table, double r,
                           double tol = 1e-12);
SeriesResult l_sharp_at(const LegendreTable& table, double r,
                        double tol = 1e-12);

// Adaptive-depth growth-function views of the two series (table deepens on
// demand, guarded by a mutex; results do not depend on the schedule).
GrowthFunction l_function_growth(const GrowthFunction& u, int initial_depth = 64);
GrowthFunction l_sharp_growth(const GrowthFunction& u, int initial_depth = 64);

// sup over t >= 0 of (log ell_u(t) + t log r), evaluating the transform at
// continuous t on demand. Recovers log u(r) for (log, exp)-convex u.
LogValue reconstruct_at(const LegendreTable& table, double r,
                        const LegendreOptions& opt = {});

struct IdentityCheck {
  std::string name;
  Status status = Status::Inconclusive;
  double worst_margin = 0.0;  // positive = satisfied with room, log scale
  std::optional<std::pair<int, int>> witness;
  std::string note;
};

struct IdentityReport {
  std::vector<IdentityCheck> checks;
  bool all_passed_or_skipped() const;
};

// Transform identities on one table: log-concavity of ell, the ell(0) product
// bound, weighted log-convexity (exponent k), the 2^k dilation product bound,
// and the dual transform identity checked against the numerically built dual.
IdentityReport verify_legendre_identities(const GrowthFunction& u, int n_max,
                                          double k, double slack = 1e-8,
                                          double dual_tol = 1e-5);

struct LFunctionBoundReport {
  IdentityCheck upper;     // L_u(r) <= (e a / log a) u(a r)
  IdentityCheck lower;     // u(r) <= C L_u(2^k r), C estimated
  double c_estimate = 0.0;
};

LFunctionBoundReport verify_lfunction_bounds(const GrowthFunction& u, double a,
                                             double k, const GridSpec& grid,
                                             double slack = 1e-8);

}  // namespace ckstk
