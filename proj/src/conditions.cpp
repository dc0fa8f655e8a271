#include "ckstk/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

#include "ckstk/errors.hpp"
#include "ckstk/optimize.hpp"

namespace ckstk {

namespace {

struct Window {
  int lo;  // inclusive, >= 1
  int hi;  // inclusive
  int mid() const { return lo + (hi - lo) / 2; }
};

Window trend_window(int n_max) {
  Window w;
  w.lo = std::max(1, n_max - n_max / 3);
  w.hi = n_max;
  return w;
}

Verdict check_a1(const AlphaSequence& a, const ConditionOptions& opt) {
  Verdict v;
  const double la0 = a.log_alpha[0].log();
  if (std::fabs(la0) > opt.slack) {
    v.status = Status::Fail;
    v.witness = {0, 0};
    v.margin = la0;
    v.note = "alpha(0) != 1";
    return v;
  }
  const Window w = trend_window(a.n_max);
  auto rate = [&](int n) { return -a.log_alpha[n].log() / n; };
  double first_max = -std::numeric_limits<double>::infinity();
  double second_max = -std::numeric_limits<double>::infinity();
  for (int n = w.lo; n <= w.hi; ++n) {
    if (n <= w.mid())
      first_max = std::max(first_max, rate(n));
    else
      second_max = std::max(second_max, rate(n));
  }
  const double log_sigma = std::max(0.0, std::max(first_max, second_max));
  v.constant = std::exp(log_sigma);
  double inf_m = 0.0;
  for (int n = 1; n <= a.n_max; ++n)
    inf_m = std::min(inf_m, a.log_alpha[n].log() + n * log_sigma);
  v.margin = inf_m;
  if (second_max > first_max + opt.drift_cap) {
    v.status = Status::Inconclusive;
    v.note = "geometric rate still growing across the window";
  } else {
    v.status = Status::Pass;
  }
  return v;
}

// Shared by A2 / A2t: n-th-root log sequence must fall through the window and
// end below the threshold.
Verdict check_root_decay(const AlphaSequence& a,
                         const std::function<double(int)>& root_log,
                         const ConditionOptions& opt) {
  Verdict v;
  const Window w = trend_window(a.n_max);
  bool decreasing = true;
  for (int n = w.lo; n < w.hi; ++n)
    if (root_log(n + 1) > root_log(n) + opt.slack) decreasing = false;
  const double final_root = root_log(w.hi);
  v.margin = final_root;
  v.constant = std::exp(final_root);
  if (decreasing && final_root < opt.a2_threshold) {
    v.status = Status::Pass;
  } else {
    v.status = Status::Inconclusive;
    v.note = decreasing ? "root sequence not yet below threshold"
                        : "root sequence flat over the window";
  }
  return v;
}

// B1 / B1t: nested transform of the numerically summed generating function,
// restricted to the prefix's certified-convergence range.
Verdict check_limsup_nested(const AlphaSequence& a, EgfKind kind, bool tilde,
                            const ConditionOptions& opt) {
  Verdict v;
  try {
    // largest safe r for this prefix at the nested tolerance
    auto converges = [&](double r) {
      try {
        return egf_eval(a, kind, r, opt.nested_tol).converged;
      } catch (const Error&) {
        return false;
      }
    };
    double hi = 0.25;
    if (!converges(hi)) throw NonDecreasingTail("no safe range at all");
    // geometric walk up, then bisect between last good and first bad
    while (converges(hi * 2.0) && hi < 1e290) hi *= 2.0;
    double bad = hi * 2.0;
    for (int i = 0; i < 40; ++i) {
      const double mid = std::sqrt(hi * bad);
      if (converges(mid))
        hi = mid;
      else
        bad = mid;
    }
    const double r_safe = hi;
    const double x_cap = std::log(r_safe);

    auto log_g = [&](double r) {
      return egf_eval(a, kind, r, opt.nested_tol).sum.log();
    };

    const Window w = trend_window(a.n_max);
    double first_max = -std::numeric_limits<double>::infinity();
    double second_max = -std::numeric_limits<double>::infinity();
    bool capped = false;
    double seed = 0.0;
    for (int n = w.lo; n <= w.hi; ++n) {
      double ell_g;
      try {
        OptimOptions oo;
        oo.lo_cap = -700.0;
        oo.hi_cap = x_cap;
        const auto res = optimize_scalar(
            [&](double x) { return log_g(std::exp(x)) - n * x; },
            OptimMode::Min, std::min(seed, x_cap), 1e-7, oo);
        ell_g = res.value_opt;
        seed = res.arg_opt;
      } catch (const NoBracket& nb) {
        if (nb.side == NoBracket::Side::Left) throw;
        ell_g = log_g(r_safe) - n * x_cap;  // boundary value, biased upward
        capped = true;
        seed = x_cap;
      }
      const double lfact = a.log_factorial(n);
      const double root =
          tilde ? (lfact + a.log_alpha[n].log() + ell_g) / n
                : (lfact - a.log_alpha[n].log() + ell_g) / n;
      if (n <= w.mid())
        first_max = std::max(first_max, root);
      else
        second_max = std::max(second_max, root);
    }
    v.constant = std::exp(std::max(first_max, second_max));
    v.margin = second_max - first_max;
    if (second_max <= first_max + opt.drift_cap) {
      v.status = Status::Pass;
      v.note = capped ? "running max stable; r-search capped at series range"
                      : "running max stable";
    } else {
      v.status = Status::Inconclusive;
      v.note = "running max still growing across the window";
    }
  } catch (const Error& e) {
    v.status = Status::Inconclusive;
    v.note = std::string("evaluation failed: ") + e.what();
  }
  return v;
}

Verdict from_shape(const ShapeVerdict& s) {
  Verdict v;
  v.status = s.status;
  v.margin = s.margin;
  if (s.witness_n) v.witness = {*s.witness_n, *s.witness_n + 2};
  return v;
}

// Upper concave envelope (least concave majorant) of a sequence, by upper
// convex hull of the points (n, s[n]).
std::vector<double> concave_envelope(const std::vector<double>& s) {
  const int n = static_cast<int>(s.size());
  std::vector<int> hull;
  for (int i = 0; i < n; ++i) {
    while (hull.size() >= 2) {
      const int p = hull[hull.size() - 2], q = hull[hull.size() - 1];
      // keep the chain turning downward (concave)
      const double cross = (static_cast<double>(q - p)) * (s[i] - s[q]) -
                           (static_cast<double>(i - q)) * (s[q] - s[p]);
      if (cross >= 0.0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(i);
  }
  std::vector<double> env(n);
  for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
    const int p = hull[h], q = hull[h + 1];
    for (int i = p; i <= q; ++i)
      env[i] = s[p] + (s[q] - s[p]) * (i - p) / std::max(1, q - p);
  }
  env[hull.back()] = s[hull.back()];
  return env;
}

Verdict check_near_b2(const AlphaSequence& a, const ConditionOptions& opt) {
  Verdict v;
  // route (i): for transform-derived sequences with (log, x^2)-convex source,
  // {alpha(n) n! / n^{2n}} is log-concave
  if (a.source) {
    bool x2 = a.source->claims(ClassTag::LogX2Convex);
    if (!x2) {
      try {
        x2 = check_class(*a.source, ClassTag::LogX2Convex).verdict == Status::Pass;
      } catch (const Error&) {
        x2 = false;
      }
    }
    if (x2) {
      std::vector<LogValue> s;
      s.reserve(a.n_max + 1);
      for (int n = 0; n <= a.n_max; ++n)
        s.push_back(LogValue::from_log(a.log_alpha[n].log() +
                                       a.log_factorial(n) -
                                       (n == 0 ? 0.0 : 2.0 * n * std::log(n))));
      const ShapeVerdict sh = log_shape(s, SeqShape::LogConcave, opt.slack);
      if (sh.status == Status::Pass) {
        v.status = Status::Pass;
        v.margin = sh.margin;
        v.note = "log-concave after the n^{2n} rescale";
        return v;
      }
    }
  }
  // route (ii): equivalence with the concave envelope of log gamma
  std::vector<double> s(a.n_max + 1);
  for (int n = 0; n <= a.n_max; ++n) s[n] = a.log_gamma[n].log();
  const std::vector<double> env = concave_envelope(s);
  AlphaSequence lhs, rhs;
  lhs.n_max = rhs.n_max = a.n_max;
  for (int n = 0; n <= a.n_max; ++n) {
    lhs.log_alpha.push_back(LogValue::from_log(s[n]));
    rhs.log_alpha.push_back(LogValue::from_log(env[n]));
  }
  const SequenceEquivalence eq =
      sequences_equivalent(lhs, rhs, opt.spread_cap, opt.slack);
  v.margin = eq.exponent_spread;
  if (eq.holds) {
    v.status = Status::Pass;
    v.constant = eq.c2;
    v.note = "equivalent to its concave envelope";
  } else {
    v.status = Status::Inconclusive;
    v.note = "no log-concave majorant found within the exponent-spread cap";
  }
  return v;
}

Verdict check_c_constant(const AlphaSequence& a, char which,
                         const ConditionOptions& opt) {
  (void)opt;
  Verdict v;
  const auto& la = a.log_alpha;
  double best = -std::numeric_limits<double>::infinity();
  std::pair<int, int> arg{0, 0};
  if (which == '1') {
    for (int m = 1; m <= a.n_max; ++m)
      for (int n = 0; n <= m; ++n) {
        const double q = (la[n].log() - la[m].log()) / m;
        if (q > best) {
          best = q;
          arg = {n, m};
        }
      }
  } else {
    for (int n = 0; n <= a.n_max; ++n)
      for (int m = n; n + m <= a.n_max; ++m) {
        if (n + m == 0) continue;
        const double diff = which == '2'
                                ? la[n + m].log() - la[n].log() - la[m].log()
                                : la[n].log() + la[m].log() - la[n + m].log();
        const double q = diff / (n + m);
        if (q > best) {
          best = q;
          arg = {n, m};
        }
      }
  }
  v.status = Status::Pass;
  v.constant = std::exp(best);
  v.witness = arg;
  v.margin = 0.0;
  return v;
}

}  // namespace

const std::vector<std::string>& condition_names() {
  static const std::vector<std::string> names = {
      "A1", "A2", "A2t", "B1", "B1t", "B2",
      "B2t", "B3", "nearB2", "C1", "C2", "C3"};
  return names;
}

Verdict check_condition(const std::string& name, const AlphaSequence& a,
                        const ConditionOptions& opt) {
  if (a.n_max < 10) throw TooShort("check_condition: need N >= 10");

  try {
    if (name == "A1") return check_a1(a, opt);
    if (name == "A2")
      return check_root_decay(
          a, [&](int n) { return a.log_gamma[n].log() / n; }, opt);
    if (name == "A2t")
      return check_root_decay(
          a,
          [&](int n) {
            return -(a.log_factorial(n) + a.log_alpha[n].log()) / n;
          },
          opt);
    if (name == "B1")
      return check_limsup_nested(a, EgfKind::Alpha, /*tilde=*/false, opt);
    if (name == "B1t")
      return check_limsup_nested(a, EgfKind::InvAlpha, /*tilde=*/true, opt);
    if (name == "B2") return from_shape(log_shape(a.log_gamma, SeqShape::LogConcave, opt.slack));
    if (name == "B2t") {
      std::vector<LogValue> inv;
      inv.reserve(a.n_max + 1);
      for (int n = 0; n <= a.n_max; ++n)
        inv.push_back(LogValue::from_log(-(a.log_factorial(n) +
                                           a.log_alpha[n].log())));
      return from_shape(log_shape(inv, SeqShape::LogConcave, opt.slack));
    }
    if (name == "B3") return from_shape(log_shape(a.log_alpha, SeqShape::LogConvex, opt.slack));
    if (name == "nearB2") return check_near_b2(a, opt);
    if (name == "C1") return check_c_constant(a, '1', opt);
    if (name == "C2") return check_c_constant(a, '2', opt);
    if (name == "C3") return check_c_constant(a, '3', opt);
  } catch (const TooShort&) {
    throw;
  } catch (const Error& e) {
    Verdict v;
    v.status = Status::Inconclusive;
    v.note = std::string("evaluation failed: ") + e.what();
    return v;
  }
  throw BadParam("check_condition: unknown condition '" + name + "'");
}

namespace {

ConditionReport assemble_report(const AlphaSequence& a,
                                const ConditionOptions& opt) {
  ConditionReport rep;
  rep.subject = a.provenance.detail.empty()
                    ? (a.provenance.kind == Provenance::Kind::User ? "user"
                                                                   : "sequence")
                    : a.provenance.detail;
  rep.n_max = a.n_max;
  const auto& names = condition_names();

  if (opt.threads > 1) {
    std::vector<std::future<Verdict>> futures;
    futures.reserve(names.size());
    for (const auto& name : names)
      futures.push_back(std::async(std::launch::async, [&, name] {
        return check_condition(name, a, opt);
      }));
    for (std::size_t i = 0; i < names.size(); ++i)
      rep.entries.emplace_back(names[i], futures[i].get());
  } else {
    for (const auto& name : names)
      rep.entries.emplace_back(name, check_condition(name, a, opt));
  }

  static const std::vector<std::pair<std::string, std::string>> lattice = {
      {"A1", "A2t"},  {"B3", "B2t"},    {"B2t", "B1t"},
      {"B2", "B1"},   {"nearB2", "B1"}, {"C3", "C1"}};
  for (const auto& [premise, conclusion] : lattice) {
    const Verdict* p = rep.find(premise);
    const Verdict* c = rep.find(conclusion);
    if (p && c && p->status == Status::Pass && c->status == Status::Fail) {
      rep.internally_consistent = false;
      rep.lattice_violations.push_back(premise + "->" + conclusion);
    }
  }
  return rep;
}

}  // namespace

const Verdict* ConditionReport::find(const std::string& name) const {
  for (const auto& [n, v] : entries)
    if (n == name) return &v;
  return nullptr;
}

ConditionReport full_report(const GrowthFunction& u, int n_max,
                            const ConditionOptions& opt) {
  AlphaSequence a = alpha_from_growth(u, n_max);
  ConditionReport rep = assemble_report(a, opt);
  rep.subject = u.label();
  rep.params = u.params;
  rep.u_evidence = check_u_conditions(u);
  for (const auto& ev : rep.u_evidence)
    if ((ev.cls == ClassTag::U0 || ev.cls == ClassTag::U2 ||
         ev.cls == ClassTag::U3) &&
        ev.verdict != Status::Pass)
      rep.notes.push_back("hypothesis " + class_tag_name(ev.cls) +
                          " not established: " + status_name(ev.verdict));
  return rep;
}

ConditionReport full_report(const AlphaSequence& alpha,
                            const ConditionOptions& opt) {
  return assemble_report(alpha, opt);
}

}  // namespace ckstk
