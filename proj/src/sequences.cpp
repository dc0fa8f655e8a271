#include "ckstk/sequences.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "ckstk/errors.hpp"

namespace ckstk {

AlphaSequence alpha_from_growth(const GrowthFunction& u, int n_max,
                                const LegendreOptions& opt) {
  const LegendreTable tab = legendre_table(u, n_max, opt);
  if (tab.abort_at)
    throw EvalFailure("alpha_from_growth: transform table truncated at n=" +
                      std::to_string(*tab.abort_at));
  AlphaSequence a;
  a.n_max = n_max;
  a.provenance = {Provenance::Kind::FromGrowth, u.label()};
  a.source = u;
  a.log_alpha.reserve(n_max + 1);
  a.log_gamma.reserve(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    const double lfact = std::lgamma(n + 1.0);
    const double la = -tab.log_ell[n].log() - lfact;
    a.log_alpha.push_back(LogValue::from_log(la));
    a.log_gamma.push_back(LogValue::from_log(la - lfact));
  }
  return a;
}

SeriesResult egf_eval(const AlphaSequence& alpha, EgfKind which, double r,
                      double tol) {
  if (r < 0.0 || std::isnan(r)) throw BadParam("egf_eval: r must be >= 0");
  const int depth = static_cast<int>(alpha.log_alpha.size());
  if (depth < 1) throw TooShort("egf_eval: empty sequence");

  if (r == 0.0) {
    SeriesResult res;
    res.sum = which == EgfKind::Alpha
                  ? alpha.log_alpha[0]
                  : LogValue::one() / alpha.log_alpha[0];
    res.terms_used = 1;
    res.converged = true;
    return res;
  }

  const double log_r = std::log(r);
  auto term = [&](int n) {
    const double lfact = alpha.log_factorial(n);
    const double base = which == EgfKind::Alpha
                            ? alpha.log_alpha[n].log() - lfact
                            : -lfact - alpha.log_alpha[n].log();
    return LogValue::from_log(base + n * log_r);
  };
  return logsumexp_series(term, tol, depth);
}

std::vector<long double> bell_coefficients(int k, int n_max) {
  if (k < 1) throw BadParam("bell_coefficients: k must be >= 1");
  if (n_max < 0 || n_max > 200)
    throw BadParam("bell_coefficients: n_max must lie in [0, 200]");

  // phi holds factorial-normalized coefficients (phi[n] = n! [r^n] f) of the
  // current level, starting from f(r) = r. Each level applies
  //   g(0) = e^{phi(0)},  g(m) = sum_{j=1..m} C(m-1, j-1) phi(j) g(m-j),
  // and the final level tracks the normalized sequence directly (g(0) = 1),
  // which keeps small second-order entries exact integers.
  std::vector<long double> phi(n_max + 1, 0.0L);
  if (n_max >= 1) phi[1] = 1.0L;

  for (int level = 1; level <= k; ++level) {
    const bool last = level == k;
    std::vector<long double> g(n_max + 1, 0.0L);
    g[0] = last ? 1.0L : std::exp(phi[0]);
    for (int m = 1; m <= n_max; ++m) {
      long double acc = 0.0L;
      long double binom = 1.0L;  // C(m-1, j-1), updated multiplicatively
      for (int j = 1; j <= m; ++j) {
        acc += binom * phi[j] * g[m - j];
        binom = binom * (m - j) / j;
      }
      if (!std::isfinite(acc))
        throw PrecisionLoss("bell_coefficients: coefficient overflow at n=" +
                            std::to_string(m) + ", k=" + std::to_string(k));
      g[m] = acc;
    }
    phi = std::move(g);
  }
  return phi;
}

AlphaSequence bell_numbers(int k, int n_max) {
  const std::vector<long double> b = bell_coefficients(k, n_max);
  AlphaSequence a;
  a.n_max = n_max;
  a.provenance = {Provenance::Kind::Bell, "bell(" + std::to_string(k) + ")"};
  a.log_alpha.reserve(n_max + 1);
  a.log_gamma.reserve(n_max + 1);
  // error estimate: one rounding per multiply-add, O(n_max^2) per level
  const long double ops = static_cast<long double>(n_max) * n_max * k;
  a.precision_flag = ops * LDBL_EPSILON > 1e-8L;
  for (int n = 0; n <= n_max; ++n) {
    const double la = static_cast<double>(std::log(b[n]));
    const double lfact = std::lgamma(n + 1.0);
    a.log_alpha.push_back(LogValue::from_log(la));
    a.log_gamma.push_back(LogValue::from_log(la - lfact));
  }
  return a;
}

ShapeVerdict log_shape(std::span<const LogValue> seq, SeqShape shape,
                       double slack) {
  if (seq.size() < 3) throw TooShort("log_shape: need at least 3 entries");
  ShapeVerdict v;
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n + 2 < seq.size(); ++n) {
    const double second_diff =
        seq[n].log() + seq[n + 2].log() - 2.0 * seq[n + 1].log();
    // concave wants second_diff <= 0, convex wants >= 0
    const double margin =
        shape == SeqShape::LogConcave ? -second_diff : second_diff;
    if (margin < worst) {
      worst = margin;
      if (margin < -slack && !v.witness_n) v.witness_n = static_cast<int>(n);
    }
  }
  v.margin = worst;
  v.status = v.witness_n ? Status::Fail : Status::Pass;
  return v;
}

SequenceEquivalence sequences_equivalent(const AlphaSequence& a,
                                         const AlphaSequence& b,
                                         double spread_cap, double slack) {
  if (a.n_max != b.n_max)
    throw LengthMismatch("sequences_equivalent: sequences differ in length");
  SequenceEquivalence eq;
  eq.tested_n = a.n_max;
  const int n_max = a.n_max;
  if (n_max < 1) throw TooShort("sequences_equivalent: need N >= 1");

  std::vector<double> d(n_max + 1);
  for (int n = 0; n <= n_max; ++n)
    d[n] = b.log_alpha[n].log() - a.log_alpha[n].log();

  double lo_slope = std::numeric_limits<double>::infinity();
  double hi_slope = -std::numeric_limits<double>::infinity();
  for (int n = 1; n <= n_max; ++n) {
    lo_slope = std::min(lo_slope, d[n] / n);
    hi_slope = std::max(hi_slope, d[n] / n);
  }
  eq.c1 = std::exp(lo_slope);
  eq.c2 = std::exp(hi_slope);

  double k1_log = std::numeric_limits<double>::infinity();
  double k2_log = -std::numeric_limits<double>::infinity();
  for (int n = 0; n <= n_max; ++n) {
    k1_log = std::min(k1_log, d[n] - n * lo_slope);
    k2_log = std::max(k2_log, d[n] - n * hi_slope);
  }
  eq.k1 = std::exp(k1_log);
  eq.k2 = std::exp(k2_log);

  // trailing-window exponent spread: the per-n exponent must have stabilized
  const int decade_lo = std::max(1, n_max / 3);
  double w_lo = std::numeric_limits<double>::infinity();
  double w_hi = -std::numeric_limits<double>::infinity();
  for (int n = decade_lo; n <= n_max; ++n) {
    w_lo = std::min(w_lo, d[n] / n);
    w_hi = std::max(w_hi, d[n] / n);
  }
  eq.exponent_spread = w_hi - w_lo;

  bool dominated = true;
  for (int n = 0; n <= n_max; ++n) {
    if (k1_log + n * lo_slope > d[n] + slack) dominated = false;
    if (k2_log + n * hi_slope < d[n] - slack) dominated = false;
  }
  eq.holds = dominated && eq.exponent_spread < spread_cap;
  return eq;
}

void write_sequence_csv(std::ostream& os, const AlphaSequence& alpha) {
  const char* kind = alpha.provenance.kind == Provenance::Kind::FromGrowth
                         ? "growth"
                         : alpha.provenance.kind == Provenance::Kind::Bell
                               ? "bell"
                               : "user";
  os << "# provenance: " << kind;
  if (!alpha.provenance.detail.empty()) os << " " << alpha.provenance.detail;
  os << "\n";
  os << "n,log_value\n";
  char buf[64];
  for (int n = 0; n <= alpha.n_max; ++n) {
    std::snprintf(buf, sizeof(buf), "%d,%.17g\n", n, alpha.log_alpha[n].log());
    os << buf;
  }
}

AlphaSequence read_sequence_csv(std::istream& is, const std::string& origin) {
  AlphaSequence a;
  a.provenance = {Provenance::Kind::User, origin};
  std::string line;
  bool header_seen = false;
  int expected_n = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.find("provenance:") != std::string::npos)
        a.provenance.detail = line.substr(line.find("provenance:") + 11);
      continue;
    }
    if (!header_seen && line.rfind("n,", 0) == 0) {
      header_seen = true;
      continue;
    }
    std::istringstream row(line);
    std::string n_str, v_str;
    if (!std::getline(row, n_str, ',') || !std::getline(row, v_str))
      throw BadParam("sequence CSV: malformed row '" + line + "'");
    const int n = std::stoi(n_str);
    if (n != expected_n)
      throw BadParam("sequence CSV: expected index " +
                     std::to_string(expected_n) + ", got " + n_str);
    const double lv = std::stod(v_str);
    if (!std::isfinite(lv))
      throw BadParam("sequence CSV: log value at n=" + n_str +
                     " must be finite (entries are positive reals)");
    a.log_alpha.push_back(LogValue::from_log(lv));
    ++expected_n;
  }
  if (a.log_alpha.empty()) throw BadParam("sequence CSV: no data rows");
  a.n_max = static_cast<int>(a.log_alpha.size()) - 1;
  a.log_gamma.reserve(a.log_alpha.size());
  for (int n = 0; n <= a.n_max; ++n)
    a.log_gamma.push_back(
        LogValue::from_log(a.log_alpha[n].log() - std::lgamma(n + 1.0)));
  return a;
}

}  // namespace ckstk
