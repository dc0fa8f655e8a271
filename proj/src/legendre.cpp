#include "ckstk/legendre.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>

#include "ckstk/errors.hpp"
#include "ckstk/optimize.hpp"

namespace ckstk {

namespace {

constexpr double kXLoCap = -700.0;
constexpr double kXHiCap = 700.0;

double upper_x_cap(const GrowthFunction& u) {
  if (std::isinf(u.r_max)) return kXHiCap;
  return std::min(kXHiCap, std::log(u.r_max));
}

// Grid infimum of log u plus golden polish; boundary r = 0 included.
double inf_log_u(const GrowthFunction& u, const LegendreOptions& opt) {
  if (u.claims(ClassTag::Increasing)) return u.log_eval(0.0);
  double best = u.log_eval(0.0);
  double best_x = -std::numeric_limits<double>::infinity();
  const double hi = upper_x_cap(u);
  for (double x = -40.0; x <= std::min(40.0, hi); x += 0.5) {
    const double v = u.log_eval(std::exp(x));
    if (v < best) {
      best = v;
      best_x = x;
    }
  }
  if (std::isfinite(best_x)) {
    OptimOptions oo;
    oo.lo_cap = best_x - 1.0;
    oo.hi_cap = std::min(best_x + 1.0, hi);
    try {
      const auto res =
          optimize_scalar([&](double x) { return u.log_eval(std::exp(x)); },
                          OptimMode::Min, best_x, opt.x_tol, oo);
      best = std::min(best, res.value_opt);
    } catch (const NoBracket&) {
    }
  }
  return best;
}

}  // namespace

LogValue legendre_at(const GrowthFunction& u, double t,
                     std::optional<double> seed_log_r,
                     const LegendreOptions& opt) {
  if (t < 0.0 || std::isnan(t)) throw BadParam("legendre_at: t must be >= 0");
  if (t == 0.0) return LogValue::from_log(inf_log_u(u, opt));

  OptimOptions oo;
  oo.lo_cap = kXLoCap;
  oo.hi_cap = upper_x_cap(u);
  const double seed = seed_log_r.value_or(0.0);
  try {
    const auto res = optimize_scalar(
        [&](double x) { return u.log_eval(std::exp(x)) - t * x; },
        OptimMode::Min, seed, opt.x_tol, oo);
    return LogValue::from_log(res.value_opt);
  } catch (const NoBracket& nb) {
    if (nb.side == NoBracket::Side::Left) {
      // t > 0 makes the objective blow up on the left; reaching the cap means
      // u collapses faster than r^t there, which no growth function does.
      throw;
    }
    throw NoBracket(
        "legendre_at: infimum of u(r)/r^t not attained inside the "
        "representable range at t=" + std::to_string(t),
        NoBracket::Side::Right);
  }
}

LegendreTable legendre_table(const GrowthFunction& u, int n_max,
                             const LegendreOptions& opt) {
  if (n_max < 2) throw BadParam("legendre_table: need N >= 2");
  LegendreTable tab;
  tab.source = u;
  tab.n_max = n_max;
  tab.certified_convex = u.claims(ClassTag::LogExpConvex);
  if (!tab.certified_convex) {
    try {
      tab.certified_convex =
          check_class(u, ClassTag::LogExpConvex).verdict == Status::Pass;
    } catch (const Error&) {
      tab.certified_convex = false;
    }
  }

  tab.log_ell.reserve(n_max + 1);
  tab.argmin_r.reserve(n_max + 1);
  std::optional<double> seed;
  for (int n = 0; n <= n_max; ++n) {
    try {
      if (n == 0) {
        tab.log_ell.push_back(LogValue::from_log(inf_log_u(u, opt)));
        tab.argmin_r.push_back(0.0);
      } else {
        OptimOptions oo;
        oo.lo_cap = kXLoCap;
        oo.hi_cap = upper_x_cap(u);
        const auto res = optimize_scalar(
            [&](double x) { return u.log_eval(std::exp(x)) - n * x; },
            OptimMode::Min, seed.value_or(0.0), opt.x_tol, oo);
        tab.log_ell.push_back(LogValue::from_log(res.value_opt));
        tab.argmin_r.push_back(std::exp(res.arg_opt));
        seed = res.arg_opt;
      }
    } catch (const Error&) {
      tab.abort_at = n;
      tab.n_max = n - 1;
      break;
    }
  }
  return tab;
}

LogValue dual_legendre_at(const GrowthFunction& u, double r,
                          const LegendreOptions& opt) {
  if (r < 0.0 || std::isnan(r)) throw BadParam("dual_legendre_at: r must be >= 0");
  if (r == 0.0) return LogValue::from_log(-inf_log_u(u, opt));

  const double log_r = std::log(r);
  OptimOptions oo;
  oo.lo_cap = kXLoCap;
  oo.hi_cap = upper_x_cap(u);
  // maximand 2 sqrt(r s) - log u(s) on y = log s; boundary s = 0 also tested
  const auto res = optimize_scalar(
      [&](double y) {
        return 2.0 * std::exp(0.5 * (log_r + y)) - u.log_eval(std::exp(y));
      },
      OptimMode::Max, std::min(std::log(std::max(r, 1.0)), oo.hi_cap), opt.x_tol,
      oo);
  const double boundary = -u.log_eval(0.0);
  return LogValue::from_log(std::max(res.value_opt, boundary));
}

GrowthFunction dual_as_growth(const GrowthFunction& u, bool prefer_closed_form) {
  if (prefer_closed_form && u.dual_spec)
    return make_catalog(u.dual_spec->first, u.dual_spec->second);

  GrowthFunction g;
  g.name = u.name + "*";
  g.params = u.params;
  auto base = std::make_shared<GrowthFunction>(u);
  g.log_eval = [base](double r) { return dual_legendre_at(*base, r).log(); };
  // The dual is increasing in r, and log u*(x^2) is a sup of affine
  // functions of x, hence convex, whatever u is.
  g.claimed = {ClassTag::Increasing, ClassTag::LogX2Convex, ClassTag::U3,
               ClassTag::LogExpConvex};
  if (u.claims(ClassTag::CPlusHalf)) {
    g.claimed.insert(ClassTag::CPlusHalf);
    g.claimed.insert(ClassTag::CPlusLog);
  }
  if (u.claims(ClassTag::U0)) {
    g.claimed.insert(ClassTag::U0);  // u*(0) = 1/inf u
    g.claimed.insert(ClassTag::U1);
  }
  return g;
}

namespace {

SeriesResult table_series(const LegendreTable& table, double r, double tol,
                          bool sharp) {
  if (r < 0.0 || std::isnan(r)) throw BadParam("series: r must be >= 0");
  const int depth = static_cast<int>(table.log_ell.size());
  if (depth < 3) throw TooShort("series: table too shallow");

  // n-th root decay profile over the last third; without it the series is
  // not entire and no r is safe.
  const int third = std::max(2, depth / 3);
  double prev = std::numeric_limits<double>::infinity();
  bool decaying = true;
  for (int n = depth - third; n < depth; n += std::max(1, third / 4)) {
    if (n < 1) continue;
    const double root = sharp
        ? -(table.log_ell[n].log() + 2.0 * std::lgamma(n + 1.0)) / n
        : table.log_ell[n].log() / n;
    if (root > prev + 1e-9) decaying = false;
    prev = root;
  }
  if (!decaying)
    throw DivergentProfile("series: no n-th-root decay in the table");

  if (r == 0.0) {
    SeriesResult res;
    res.sum = sharp ? LogValue::one() / table.log_ell[0] : table.log_ell[0];
    res.terms_used = 1;
    res.converged = true;
    return res;
  }

  const double log_r = std::log(r);
  auto term = [&](int n) {
    if (sharp)
      return LogValue::from_log(n * log_r - table.log_ell[n].log() -
                                2.0 * std::lgamma(n + 1.0));
    return LogValue::from_log(table.log_ell[n].log() + n * log_r);
  };
  return logsumexp_series(term, tol, depth);
}

}  // namespace

SeriesResult l_function_at(const LegendreTable& table, double r, double tol) {
  return table_series(table, r, tol, /*sharp=*/false);
}

SeriesResult l_sharp_at(const LegendreTable& table, double r, double tol) {
  return table_series(table, r, tol, /*sharp=*/true);
}

namespace {

// Shared growing table behind the series-backed growth functions.
struct SeriesCache {
  std::mutex mu;
  LegendreTable table;
  LegendreOptions opt;
  int depth_cap = 20000;

  void ensure_depth(int want) {
    if (static_cast<int>(table.log_ell.size()) > want) return;
    if (table.abort_at)
      throw EvalFailure("series cache: table truncated at n=" +
                        std::to_string(*table.abort_at));
    OptimOptions oo;
    oo.lo_cap = kXLoCap;
    oo.hi_cap = upper_x_cap(table.source);
    double seed = table.argmin_r.back() > 0.0 ? std::log(table.argmin_r.back())
                                              : 0.0;
    for (int n = static_cast<int>(table.log_ell.size()); n <= want; ++n) {
      const auto res = optimize_scalar(
          [&](double x) { return table.source.log_eval(std::exp(x)) - n * x; },
          OptimMode::Min, seed, opt.x_tol, oo);
      table.log_ell.push_back(LogValue::from_log(res.value_opt));
      table.argmin_r.push_back(std::exp(res.arg_opt));
      seed = res.arg_opt;
    }
    table.n_max = static_cast<int>(table.log_ell.size()) - 1;
  }
};

GrowthFunction series_growth(const GrowthFunction& u, int initial_depth,
                             bool sharp) {
  auto cache = std::make_shared<SeriesCache>();
  cache->table = legendre_table(u, std::max(8, initial_depth));

  GrowthFunction g;
  g.name = (sharp ? "Lsharp[" : "L[") + u.name + "]";
  g.params = u.params;
  g.claimed = {ClassTag::Increasing};  // positive coefficients
  if (!sharp && u.claims(ClassTag::LogExpConvex))
    g.claimed.insert(ClassTag::LogExpConvex);
  if (sharp && u.claims(ClassTag::LogX2Convex)) {
    g.claimed.insert(ClassTag::LogX2Convex);
    g.claimed.insert(ClassTag::U3);
  }
  if (u.claims(ClassTag::CPlusLog)) g.claimed.insert(ClassTag::CPlusLog);
  if (sharp && u.claims(ClassTag::CPlusHalf)) g.claimed.insert(ClassTag::CPlusHalf);
  // The upper envelope L_u(r) <= e^2 u(e r) keeps values representable only
  // while u itself is; shrink the domain accordingly.
  if (!std::isinf(u.r_max)) g.r_max = u.r_max / 2.8;

  g.log_eval = [cache, sharp](double r) {
    std::lock_guard<std::mutex> lock(cache->mu);
    for (;;) {
      SeriesResult res;
      try {
        res = table_series(cache->table, r, cache->opt.series_tol, sharp);
      } catch (const NonDecreasingTail&) {
        res.converged = false;
      }
      if (res.converged) return res.sum.log();
      const int depth = static_cast<int>(cache->table.log_ell.size());
      if (2 * depth > cache->depth_cap)
        throw NonDecreasingTail(
            "series growth: depth cap reached before convergence at r=" +
            std::to_string(r));
      cache->ensure_depth(2 * depth);
    }
  };
  return g;
}

}  // namespace

GrowthFunction l_function_growth(const GrowthFunction& u, int initial_depth) {
  return series_growth(u, initial_depth, /*sharp=*/false);
}

GrowthFunction l_sharp_growth(const GrowthFunction& u, int initial_depth) {
  return series_growth(u, initial_depth, /*sharp=*/true);
}

LogValue reconstruct_at(const LegendreTable& table, double r,
                        const LegendreOptions& opt) {
  if (r < 0.0 || std::isnan(r)) throw BadParam("reconstruct_at: r must be >= 0");
  if (r == 0.0) return table.log_ell.at(0);

  const GrowthFunction& u = table.source;
  const double log_r = std::log(r);
  const double boundary = table.log_ell.at(0).log();  // t = 0 term

  // keep t * |log r| representable on the right; below t ~ 1e-17 the tilt
  // t log r is invisible next to the t = 0 boundary candidate
  OptimOptions oo;
  oo.lo_cap = -40.0;
  oo.hi_cap = std::min(kXHiCap, std::log(1e305 / std::max(1.0, std::fabs(log_r))));
  try {
    const auto res = optimize_scalar(
        [&](double xt) {
          const double t = std::exp(xt);
          return legendre_at(u, t, std::log(std::max(t, 1e-6)), opt).log() +
                 t * log_r;
        },
        OptimMode::Max, 0.0, opt.x_tol, oo);
    return LogValue::from_log(std::max(res.value_opt, boundary));
  } catch (const NoBracket& nb) {
    if (nb.side == NoBracket::Side::Left)
      return LogValue::from_log(boundary);  // supremum sits at t -> 0
    throw NoBracket("reconstruct_at: maximizing t beyond the bracket cap at r=" +
                        std::to_string(r),
                    NoBracket::Side::Right);
  }
}

bool IdentityReport::all_passed_or_skipped() const {
  for (const auto& c : checks)
    if (c.status == Status::Fail) return false;
  return true;
}

IdentityReport verify_legendre_identities(const GrowthFunction& u, int n_max,
                                          double k, double slack,
                                          double dual_tol) {
  if (n_max < 4) throw BadParam("verify_legendre_identities: need N >= 4");
  if (!(k > 0.0)) throw BadParam("verify_legendre_identities: need k > 0");

  const LegendreTable tab = legendre_table(u, n_max);
  if (tab.abort_at)
    throw EvalFailure("verify_legendre_identities: table truncated at n=" +
                      std::to_string(*tab.abort_at));
  const auto& ell = tab.log_ell;
  IdentityReport report;

  // log-concavity of {ell(n)}
  {
    IdentityCheck c;
    c.name = "ell_log_concave";
    double worst = std::numeric_limits<double>::infinity();
    for (int n = 0; n + 2 <= n_max; ++n) {
      const double m =
          2.0 * ell[n + 1].log() - ell[n].log() - ell[n + 2].log();
      if (m < worst) {
        worst = m;
        if (m < -slack && !c.witness) c.witness = {n, n + 2};
      }
    }
    c.worst_margin = worst;
    c.status = c.witness ? Status::Fail : Status::Pass;
    report.checks.push_back(std::move(c));
  }

  // ell(0) ell(n+m) <= ell(n) ell(m)
  {
    IdentityCheck c;
    c.name = "ell_zero_product_bound";
    double worst = std::numeric_limits<double>::infinity();
    for (int n = 0; n <= n_max; ++n) {
      for (int m = n; n + m <= n_max; ++m) {
        const double margin = ell[n].log() + ell[m].log() - ell[0].log() -
                              ell[n + m].log();
        if (margin < worst) {
          worst = margin;
          if (margin < -slack && !c.witness) c.witness = {n, m};
        }
      }
    }
    c.worst_margin = worst;
    c.status = c.witness ? Status::Fail : Status::Pass;
    report.checks.push_back(std::move(c));
  }

  const bool xk_ok =
      (k == 1.0 && u.claims(ClassTag::LogX1Convex)) ||
      (k == 2.0 && u.claims(ClassTag::LogX2Convex)) ||
      check_class(u, k == 1.0 ? ClassTag::LogX1Convex : ClassTag::LogX2Convex)
              .verdict == Status::Pass;

  // log-convexity of {ell(n) n^{kn}}
  {
    IdentityCheck c;
    c.name = "weighted_ell_log_convex";
    if (!xk_ok) {
      c.status = Status::Inconclusive;
      c.note = "SKIPPED: hypothesis evidence failed";
    } else {
      auto s = [&](int n) {
        return ell[n].log() + (n == 0 ? 0.0 : k * n * std::log(n));
      };
      double worst = std::numeric_limits<double>::infinity();
      for (int n = 0; n + 2 <= n_max; ++n) {
        const double m = s(n) + s(n + 2) - 2.0 * s(n + 1);
        if (m < worst) {
          worst = m;
          if (m < -slack && !c.witness) c.witness = {n, n + 2};
        }
      }
      c.worst_margin = worst;
      c.status = c.witness ? Status::Fail : Status::Pass;
    }
    report.checks.push_back(std::move(c));
  }

  // ell(n) ell(m) <= ell(0) 2^{k(n+m)} ell(n+m)
  {
    IdentityCheck c;
    c.name = "ell_dilation_product_bound";
    if (!xk_ok) {
      c.status = Status::Inconclusive;
      c.note = "SKIPPED: hypothesis evidence failed";
    } else {
      const double log2k = k * std::log(2.0);
      double worst = std::numeric_limits<double>::infinity();
      for (int n = 0; n <= n_max; ++n) {
        for (int m = n; n + m <= n_max; ++m) {
          const double margin = ell[0].log() + (n + m) * log2k +
                                ell[n + m].log() - ell[n].log() - ell[m].log();
          if (margin < worst) {
            worst = margin;
            if (margin < -slack && !c.witness) c.witness = {n, m};
          }
        }
      }
      c.worst_margin = worst;
      c.status = c.witness ? Status::Fail : Status::Pass;
    }
    report.checks.push_back(std::move(c));
  }

  // dual transform identity: log ell_{u*}(n) = 2n - log ell_u(n) - 2n log n,
  // with the numerically built dual on the left.
  {
    IdentityCheck c;
    c.name = "dual_ell_identity";
    const bool x2_ok = u.claims(ClassTag::LogX2Convex) ||
                       check_class(u, ClassTag::LogX2Convex).verdict == Status::Pass;
    if (!x2_ok) {
      c.status = Status::Inconclusive;
      c.note = "SKIPPED: not (log, x^2)-convex by evidence";
    } else {
      const GrowthFunction dual = dual_as_growth(u, /*prefer_closed_form=*/false);
      double worst = 0.0;
      std::optional<double> seed;
      for (int n = 0; n <= std::min(n_max, 50); ++n) {
        const double lhs = legendre_at(dual, n, seed).log();
        seed = std::nullopt;
        const double rhs =
            2.0 * n - ell[n].log() - (n == 0 ? 0.0 : 2.0 * n * std::log(n));
        const double resid = std::fabs(lhs - rhs);
        if (resid > worst) {
          worst = resid;
          if (resid > dual_tol && !c.witness) c.witness = {n, n};
        }
      }
      c.worst_margin = worst;
      c.status = c.witness ? Status::Fail : Status::Pass;
    }
    report.checks.push_back(std::move(c));
  }

  return report;
}

LFunctionBoundReport verify_lfunction_bounds(const GrowthFunction& u, double a,
                                             double k, const GridSpec& grid,
                                             double slack) {
  if (!(a > 1.0)) throw BadParam("verify_lfunction_bounds: need a > 1");
  if (!(k > 0.0)) throw BadParam("verify_lfunction_bounds: need k > 0");

  LFunctionBoundReport rep;
  rep.upper.name = "l_function_upper_envelope";
  rep.lower.name = "l_function_lower_envelope";

  const bool exp_convex =
      u.claims(ClassTag::LogExpConvex) ||
      check_class(u, ClassTag::LogExpConvex).verdict == Status::Pass;
  const bool xk_ok =
      (k == 1.0 && u.claims(ClassTag::LogX1Convex)) ||
      (k == 2.0 && u.claims(ClassTag::LogX2Convex)) ||
      check_class(u, k == 1.0 ? ClassTag::LogX1Convex : ClassTag::LogX2Convex)
              .verdict == Status::Pass;
  const bool increasing = u.claims(ClassTag::Increasing) ||
                          check_class(u, ClassTag::Increasing).verdict ==
                              Status::Pass;

  GrowthFunction lf = l_function_growth(u);
  const double pow2k = std::pow(2.0, k);
  const std::vector<double> rs =
      grid.abscissas_capped(std::min(u.r_max / a, lf.r_max / pow2k));

  if (!exp_convex) {
    rep.upper.status = Status::Inconclusive;
    rep.upper.note = "SKIPPED: not (log, exp)-convex by evidence";
  } else {
    const double log_const = std::log(2.718281828459045235 * a / std::log(a));
    double worst = std::numeric_limits<double>::infinity();
    Status st = Status::Pass;
    for (double r : rs) {
      const double margin = log_const + u.log_eval(a * r) - lf.log_eval(r);
      worst = std::min(worst, margin);
      if (margin < -slack) st = Status::Fail;
    }
    rep.upper.worst_margin = worst;
    rep.upper.status = st;
  }

  if (!(increasing && xk_ok)) {
    rep.lower.status = Status::Inconclusive;
    rep.lower.note = "SKIPPED: needs increasing and (log, x^k)-convex evidence";
  } else {
    double c_max = -std::numeric_limits<double>::infinity();
    for (double r : rs)
      c_max = std::max(c_max, u.log_eval(r) - lf.log_eval(pow2k * r));
    rep.c_estimate = std::exp(c_max);
    rep.lower.worst_margin = c_max;
    rep.lower.status = std::isfinite(c_max) ? Status::Pass : Status::Inconclusive;
    rep.lower.note = "C estimated as a grid supremum";
  }
  return rep;
}

}  // namespace ckstk
