#include "ckstk/classes.hpp"

#include <algorithm>
#include <cmath>

#include "ckstk/errors.hpp"
#include "ckstk/optimize.hpp"

namespace ckstk {

namespace {

double safe_log_eval(const GrowthFunction& u, double r) {
  double v;
  try {
    v = u.log_eval(r);
  } catch (const Error& e) {
    throw EvalFailure("check_class: evaluation failed at r=" +
                      std::to_string(r) + " (" + e.what() + ")");
  }
  if (std::isnan(v) || std::isinf(v))
    throw EvalFailure("check_class: log u non-finite at r=" + std::to_string(r));
  return v;
}

// Midpoint convexity of g on the given abscissas; g(x) = log u(transform(x)).
ClassEvidence convexity_evidence(const GrowthFunction& u, ClassTag cls,
                                 const std::vector<double>& xs,
                                 const std::function<double(double)>& to_r,
                                 const ClassCheckOptions& opt) {
  ClassEvidence ev;
  ev.cls = cls;
  auto g = [&](double x) { return safe_log_eval(u, to_r(x)); };

  std::vector<double> gx(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) gx[i] = g(xs[i]);

  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      const double xm = 0.5 * (xs[i] + xs[j]);
      const double gm = g(xm);
      // convexity: g(mid) <= (g(xi)+g(xj))/2, margin positive when satisfied
      const double margin = 0.5 * (gx[i] + gx[j]) - gm;
      worst = std::min(worst, margin);
      if (margin < -opt.slack && !ev.witness) {
        ev.witness = {xs[i], xm, xs[j]};
      }
    }
  }
  ev.margin = worst;
  ev.verdict = ev.witness ? Status::Fail : Status::Pass;
  if (ev.verdict == Status::Pass)
    ev.note = "no midpoint violation on grid";
  return ev;
}

ClassEvidence limit_evidence(const GrowthFunction& u, ClassTag cls,
                             const std::vector<double>& rs,
                             const std::function<double(double)>& denom,
                             const ClassCheckOptions& opt) {
  ClassEvidence ev;
  ev.cls = cls;
  std::vector<double> ratio;
  ratio.reserve(rs.size());
  for (double r : rs) {
    if (r <= 1.0) continue;  // denominators log r / sqrt(r) only useful past 1
    ratio.push_back(safe_log_eval(u, r) / denom(r));
  }
  const int w = std::min<int>(opt.trend_window, static_cast<int>(ratio.size()));
  if (w < 3) {
    ev.note = "grid too small for a trend";
    return ev;
  }
  bool increasing = true;
  for (std::size_t i = ratio.size() - w; i + 1 < ratio.size(); ++i)
    if (ratio[i + 1] <= ratio[i]) increasing = false;
  ev.margin = ratio.back();
  if (increasing && ratio.back() > opt.limit_threshold) {
    ev.verdict = Status::Pass;
    ev.note = "ratio increasing through the window, final above threshold";
  } else {
    ev.verdict = Status::Inconclusive;
    ev.note = increasing ? "ratio increasing but below threshold"
                         : "ratio not monotone over the window";
  }
  return ev;
}

}  // namespace

std::string status_name(Status s) {
  switch (s) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    case Status::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

GridSpec GridSpec::default_grid() {
  GridSpec g;
  g.r_min = std::ldexp(1.0, -20);
  g.r_max = std::ldexp(1.0, 40);
  g.points = 61;
  return g;
}

std::vector<double> GridSpec::abscissas() const {
  std::vector<double> rs;
  if (points < 2 || !(r_max > r_min) || !(r_min > 0.0))
    throw BadParam("GridSpec: need points >= 2 and 0 < r_min < r_max");
  rs.reserve(points);
  const double step = (std::log(r_max) - std::log(r_min)) / (points - 1);
  for (int i = 0; i < points; ++i)
    rs.push_back(std::exp(std::log(r_min) + i * step));
  return rs;
}

std::vector<double> GridSpec::abscissas_capped(double cap) const {
  std::vector<double> rs = abscissas();
  rs.erase(std::remove_if(rs.begin(), rs.end(),
                          [cap](double r) { return r > cap; }),
           rs.end());
  return rs;
}

ClassEvidence check_class(const GrowthFunction& u, ClassTag cls,
                          const GridSpec& grid, const ClassCheckOptions& opt) {
  const std::vector<double> rs = grid.abscissas_capped(u.r_max);
  if (rs.size() < 3) throw EvalFailure("check_class: grid empty after domain cap");

  switch (cls) {
    case ClassTag::LogExpConvex: {
      std::vector<double> xs;
      for (double r : rs) xs.push_back(std::log(r));
      return convexity_evidence(u, cls, xs, [](double x) { return std::exp(x); },
                                opt);
    }
    case ClassTag::LogX1Convex: {
      return convexity_evidence(u, cls, rs, [](double x) { return x; }, opt);
    }
    case ClassTag::U3:
    case ClassTag::LogX2Convex: {
      std::vector<double> xs;
      for (double r : rs) xs.push_back(std::sqrt(r));
      return convexity_evidence(u, cls, xs, [](double x) { return x * x; }, opt);
    }
    case ClassTag::CPlusLog:
      return limit_evidence(u, cls, rs, [](double r) { return std::log(r); }, opt);
    case ClassTag::CPlusHalf:
      return limit_evidence(u, cls, rs, [](double r) { return std::sqrt(r); }, opt);
    case ClassTag::U0: {
      ClassEvidence ev;
      ev.cls = cls;
      // grid infimum plus a golden polish in x = log r around the best point
      double best = safe_log_eval(u, 0.0);
      double best_r = 0.0;
      for (double r : rs) {
        const double v = safe_log_eval(u, r);
        if (v < best) {
          best = v;
          best_r = r;
        }
      }
      if (best_r > 0.0) {
        OptimOptions oo;
        oo.lo_cap = std::log(best_r) - 1.0;
        oo.hi_cap = std::log(best_r) + 1.0;
        try {
          const auto res = optimize_scalar(
              [&](double x) { return safe_log_eval(u, std::exp(x)); },
              OptimMode::Min, std::log(best_r), 1e-9, oo);
          best = std::min(best, res.value_opt);
        } catch (const NoBracket&) {
          // grid point was already at the edge of its basin
        }
      }
      ev.margin = best;  // log inf u, should be ~0
      if (std::fabs(best) <= opt.slack) {
        ev.verdict = Status::Pass;
      } else {
        ev.verdict = Status::Fail;
        ev.witness = {best_r, best_r, best_r};
        ev.note = "inf log u = " + std::to_string(best);
      }
      return ev;
    }
    case ClassTag::U1:
    case ClassTag::Increasing: {
      ClassEvidence ev;
      ev.cls = cls;
      double prev = safe_log_eval(u, 0.0);
      const double at0 = prev;
      double prev_r = 0.0;
      for (double r : rs) {
        const double v = safe_log_eval(u, r);
        if (v < prev - opt.slack) {
          ev.verdict = Status::Fail;
          ev.witness = {prev_r, prev_r, r};
          ev.margin = v - prev;
          ev.note = "monotonicity violated";
          return ev;
        }
        prev = v;
        prev_r = r;
      }
      if (cls == ClassTag::U1 && std::fabs(at0) > opt.slack) {
        ev.verdict = Status::Fail;
        ev.witness = {0.0, 0.0, 0.0};
        ev.margin = at0;
        ev.note = "u(0) != 1";
        return ev;
      }
      ev.verdict = Status::Pass;
      ev.margin = 0.0;
      return ev;
    }
    case ClassTag::U2: {
      ClassEvidence ev;
      ev.cls = cls;
      // log u(r)/r at r = 2^j, j = 0..40, clipped to the domain
      std::vector<double> qs;
      std::vector<double> qr;
      for (int j = 0; j <= 40; ++j) {
        const double r = std::ldexp(1.0, j);
        if (r > u.r_max) break;
        qs.push_back(safe_log_eval(u, r) / r);
        qr.push_back(r);
      }
      if (qs.size() < 3) throw EvalFailure("check_class: U2 grid too small");
      const std::size_t last = qs.size() - 1;
      // decade = roughly three doublings back
      const std::size_t back = last >= 3 ? last - 3 : 0;
      if (qs[last] > 2.0 * qs[back] && qs[last] > opt.slack) {
        ev.verdict = Status::Fail;
        ev.witness = {qr[back], qr[back], qr[last]};
        ev.margin = qs[last] / std::max(qs[back], 1e-300);
        ev.note = "log u(r)/r grew by more than 2x across the last decade";
        return ev;
      }
      bool nonincreasing = true;
      const std::size_t w = std::min<std::size_t>(10, qs.size());
      for (std::size_t i = qs.size() - w; i + 1 < qs.size(); ++i)
        if (qs[i + 1] > qs[i] + opt.slack) nonincreasing = false;
      const double cap = 1e6;
      if (nonincreasing || qs[last] < cap) {
        ev.verdict = Status::Pass;
        ev.margin = qs[last];
        ev.note = "log u(r)/r bounded on the sampled range";
      } else {
        ev.verdict = Status::Inconclusive;
        ev.margin = qs[last];
      }
      return ev;
    }
  }
  throw BadParam("check_class: unsupported class tag");
}

std::vector<ClassEvidence> check_u_conditions(const GrowthFunction& u,
                                              const GridSpec& grid,
                                              const ClassCheckOptions& opt) {
  std::vector<ClassEvidence> out;
  out.push_back(check_class(u, ClassTag::U0, grid, opt));
  out.push_back(check_class(u, ClassTag::U1, grid, opt));
  out.push_back(check_class(u, ClassTag::U2, grid, opt));
  ClassEvidence u3 = check_class(u, ClassTag::LogX2Convex, grid, opt);
  u3.cls = ClassTag::U3;
  out.push_back(u3);
  return out;
}

}  // namespace ckstk
