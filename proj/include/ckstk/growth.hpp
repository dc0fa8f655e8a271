#pragma once

#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace ckstk {

// Class tags a growth function can carry as analytic claims or acquire as
// numeric evidence.
enum class ClassTag {
  CPlusLog,      // log u(r)/log r -> inf
  CPlusHalf,     // log u(r)/sqrt(r) -> inf
  LogExpConvex,  // log u(e^x) convex
  LogX1Convex,   // log u(x) convex
  LogX2Convex,   // log u(x^2) convex
  U0,            // inf u = 1
  U1,            // increasing with u(0) = 1
  U2,            // log u(r)/r bounded
  U3,            // alias of LogX2Convex in the hypothesis lists
  Increasing,
};

std::string class_tag_name(ClassTag tag);

// A named, parameterized positive continuous function on [0, inf). Only
// log u(r) is ever computed, so positivity holds by construction. Values are
// immutable after construction and safe to share across threads.
struct GrowthFunction {
  std::string name;
  std::map<std::string, double> params;
  std::function<double(double)> log_eval;  // r >= 0 -> log u(r)
  std::set<ClassTag> claimed;              // classes asserted analytically
  // Largest r with representable log u(r); transforms cap their search
  // brackets here instead of letting evaluation saturate.
  double r_max = std::numeric_limits<double>::infinity();
  // Closed-form dual Legendre transform, when the catalog knows one.
  std::optional<std::pair<std::string, std::map<std::string, double>>> dual_spec;

  bool claims(ClassTag tag) const { return claimed.count(tag) > 0; }
  std::string label() const;
};

// Catalog families:
//   ks(beta)         u(r) = exp[(1+beta) r^(1/(1+beta))],  0 <= beta < 1
//   ks_dual(beta)    u(r) = exp[(1-beta) r^(1/(1-beta))]
//   exp_k(k)         u(r) = k-fold iterated exponential, k in [1, 5]
//   bell_dual(k)     u(r) = exp[2 sqrt(r log_{k-1} sqrt(r))], k >= 2
//   exp_scaled(a)    u(r) = exp(a r), a > 0
// Params by key: "beta", "k", "a".
GrowthFunction make_catalog(const std::string& name,
                            const std::map<std::string, double>& params);

struct CatalogEntry {
  std::string name;
  std::string param_key;  // empty if none
  std::string description;
};
std::vector<CatalogEntry> catalog_entries();

// exp_k(r) guarded against overflow (throws OverflowDomain).
double iterated_exp(int k, double r);
// log_j(r) with the guard log_1(r) = log(max{r, e}); log_0(r) = r.
double iterated_log(int j, double r);

}  // namespace ckstk
