#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ckstk/classes.hpp"
#include "ckstk/growth.hpp"
#include "ckstk/legendre.hpp"
#include "ckstk/log_value.hpp"
#include "ckstk/series.hpp"

namespace ckstk {

struct Provenance {
  enum class Kind { FromGrowth, Bell, User };
  Kind kind = Kind::User;
  std::string detail;  // label of the growth function / "bell(k)" / file name
};

// Weight sequence {alpha(n)} with the derived {gamma(n) = alpha(n)/n!}.
struct AlphaSequence {
  int n_max = 0;
  std::vector<LogValue> log_alpha;
  std::vector<LogValue> log_gamma;
  Provenance provenance;
  bool precision_flag = false;  // composition error estimate exceeded 1e-8
  // kept for sequences derived from a growth function; lets condition checks
  // reuse the source's class evidence
  std::optional<GrowthFunction> source;

  double log_factorial(int n) const {  // consistent with the stored pair
    return log_alpha.at(n).log() - log_gamma.at(n).log();
  }
};

// alpha(n) = 1 / (ell_u(n) n!) from a transform table.
AlphaSequence alpha_from_growth(const GrowthFunction& u, int n_max,
                                const LegendreOptions& opt = {});

enum class EgfKind { Alpha, InvAlpha };

// Exponential generating functions: Alpha -> sum alpha(n) r^n / n!,
// InvAlpha -> sum r^n / (n! alpha(n)); log-domain with geometric tail bound.
SeriesResult egf_eval(const AlphaSequence& alpha, EgfKind which, double r,
                      double tol = 1e-12);

// Coefficients b_k(n) of the k-fold iterated exponential, normalized so the
// n = 0 entry is 1. Computed by repeated formal-series exponentials in
// extended precision; k = 1 gives the all-ones sequence, k = 2 the classical
// set-partition counts.
std::vector<long double> bell_coefficients(int k, int n_max);
AlphaSequence bell_numbers(int k, int n_max);

enum class SeqShape { LogConcave, LogConvex };

struct ShapeVerdict {
  Status status = Status::Inconclusive;
  std::optional<int> witness_n;  // first violating index
  double margin = 0.0;           // worst second difference, log scale
};

ShapeVerdict log_shape(std::span<const LogValue> seq, SeqShape shape,
                       double slack = 1e-8);

// Two-sided domination K1 c1^n a(n) <= b(n) <= K2 c2^n a(n) fitted from the
// exponent envelope of d(n) = log b(n) - log a(n).
struct SequenceEquivalence {
  double k1 = 0.0, c1 = 0.0, k2 = 0.0, c2 = 0.0;
  int tested_n = 0;
  bool holds = false;
  double exponent_spread = 0.0;  // spread of d(n)/n over the last decade
};

SequenceEquivalence sequences_equivalent(const AlphaSequence& a,
                                         const AlphaSequence& b,
                                         double spread_cap = 1.0,
                                         double slack = 1e-8);

// CSV: a '# provenance: ...' line, then 'n,log_value' rows (natural log).
void write_sequence_csv(std::ostream& os, const AlphaSequence& alpha);
AlphaSequence read_sequence_csv(std::istream& is, const std::string& origin);

}  // namespace ckstk
