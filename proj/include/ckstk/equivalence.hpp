#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ckstk/classes.hpp"
#include "ckstk/growth.hpp"
#include "ckstk/legendre.hpp"
#include "ckstk/log_value.hpp"
#include "ckstk/sequences.hpp"

namespace ckstk {

// Constants realizing c1 u(a1 r) <= v(r) <= c2 u(a2 r) on the tested range.
// Certificates are range-stamped; an edge-trend guard on the outermost grid
// points refuses constants that are visibly about to break.
struct EquivalenceCertificate {
  double c1 = 0.0, a1 = 0.0, c2 = 0.0, a2 = 0.0;
  double r_min = 0.0, r_max = 0.0;
  int grid_size = 0;
  bool holds = false;
  double worst_margin = 0.0;  // worst re-check residual, log scale (<= 0 ok)
  std::string note;
};

EquivalenceCertificate find_equivalence(const GrowthFunction& u,
                                        const GrowthFunction& v, double r_min,
                                        double r_max, int grid_size);

struct PairCertificate {
  std::string lhs, rhs;
  EquivalenceCertificate cert;
};

struct DualTrioReport {
  Status status = Status::Inconclusive;
  std::string reason;                   // set when SKIPPED
  std::vector<PairCertificate> pairs;   // dual vs L[dual], dual vs Lsharp, L[dual] vs Lsharp
};

// Pairwise equivalence of the dual transform, the L-function of the dual,
// and the sharp L-function of u.
DualTrioReport verify_thm27(const GrowthFunction& u, int n_max, double r_min,
                            double r_max, int grid_size);

enum class BoundSide { Generalized, Test };

// Characterization growth bounds as scalar evaluators: K u*(a s)^{1/2} on the
// generalized side, K u(a s)^{1/2} on the test side, with s standing for the
// squared seminorm.
LogValue growth_bound(const GrowthFunction& u, BoundSide side, double K,
                      double a, double s);

struct ExampleAssertion {
  std::string name;
  Status status = Status::Inconclusive;
  double residual = 0.0;
  std::string note;
};

struct ExampleReport {
  std::string subject;
  std::vector<ExampleAssertion> assertions;
  std::vector<PairCertificate> certificates;
  bool all_passed() const;
};

// End-to-end closed-form validation of the stretched-exponential family:
// transform table vs (1+beta) n (1 - log n) and the numeric dual vs the
// closed-form dual on a grid.
ExampleReport verify_examples_ks(double beta, int n_max);

// Iterated-exponential family: weight sequence from the slow dual vs the
// order-k set-partition numbers, and the numeric double dual vs exp_k.
ExampleReport verify_examples_bell(int k, int n_max);

}  // namespace ckstk
