#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ckstk/classes.hpp"
#include "ckstk/sequences.hpp"

namespace ckstk {

// Per-condition finding. FAIL always carries a witness whose defining
// inequality re-evaluates to a violation; limit-type conditions never FAIL
// from a finite prefix (they stay PASS-or-INCONCLUSIVE).
struct Verdict {
  Status status = Status::Inconclusive;
  std::optional<std::pair<int, int>> witness;
  double margin = 0.0;               // worst log-scale slack
  std::optional<double> constant;    // sigma, c1, c2, c3, or limsup estimate
  std::string note;
};

struct ConditionOptions {
  double slack = 1e-8;          // comparison slack, log scale
  double drift_cap = 0.1;       // allowed growth of running-max estimates
  double a2_threshold = -0.05;  // n-th-root log must end below this
  double nested_tol = 1e-9;     // series tolerance inside nested transforms
  double spread_cap = 1.0;      // exponent spread cap for equivalence fits
  int threads = 1;              // worker cap for independent checks
};

// Condition ids: A1, A2, A2t, B1, B1t, B2, B2t, B3, nearB2, C1, C2, C3
// (the 't' suffix marks the tilde variants).
const std::vector<std::string>& condition_names();

Verdict check_condition(const std::string& name, const AlphaSequence& alpha,
                        const ConditionOptions& opt = {});

struct ConditionReport {
  std::string subject;
  std::map<std::string, double> params;
  int n_max = 0;
  std::vector<std::pair<std::string, Verdict>> entries;  // fixed order
  std::vector<ClassEvidence> u_evidence;                 // empty for bare sequences
  bool internally_consistent = true;
  std::vector<std::string> lattice_violations;  // "premise->conclusion" ids
  std::vector<std::string> notes;

  const Verdict* find(const std::string& name) const;
};

// Runs every condition and cross-checks the implication lattice
// (A1=>A2t, B3=>B2t, B2t=>B1t, B2=>B1, nearB2=>B1, C3=>C1): a premise-PASS/
// conclusion-FAIL pair flags the report as internally inconsistent.
ConditionReport full_report(const GrowthFunction& u, int n_max,
                            const ConditionOptions& opt = {});
ConditionReport full_report(const AlphaSequence& alpha,
                            const ConditionOptions& opt = {});

}  // namespace ckstk
