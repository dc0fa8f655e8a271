#include "ckstk/growth.hpp"

#include <cmath>
#include <sstream>

#include "ckstk/errors.hpp"

namespace ckstk {

namespace {

constexpr double kLogDblMax = 709.782712893384;  // log(DBL_MAX), rounded down

double get_param(const std::map<std::string, double>& params,
                 const std::string& key, const std::string& fam) {
  auto it = params.find(key);
  if (it == params.end())
    throw BadParam(fam + ": missing parameter '" + key + "'");
  return it->second;
}

// Largest r with exp_{k-1}(r) finite, i.e. the evaluation domain of log exp_k.
double exp_k_domain_cap(int k) {
  if (k == 1) return std::numeric_limits<double>::infinity();
  double cap = kLogDblMax;
  for (int i = 0; i < k - 2; ++i) cap = std::log(cap);
  return cap;
}

}  // namespace

std::string class_tag_name(ClassTag tag) {
  switch (tag) {
    case ClassTag::CPlusLog: return "C_plus_log";
    case ClassTag::CPlusHalf: return "C_plus_half";
    case ClassTag::LogExpConvex: return "log_exp_convex";
    case ClassTag::LogX1Convex: return "log_x1_convex";
    case ClassTag::LogX2Convex: return "log_x2_convex";
    case ClassTag::U0: return "U0";
    case ClassTag::U1: return "U1";
    case ClassTag::U2: return "U2";
    case ClassTag::U3: return "U3";
    case ClassTag::Increasing: return "increasing";
  }
  return "?";
}

std::string GrowthFunction::label() const {
  std::ostringstream os;
  os << name;
  if (!params.empty()) {
    os << "(";
    bool first = true;
    for (const auto& [k, v] : params) {
      if (!first) os << ",";
      os << k << "=" << v;
      first = false;
    }
    os << ")";
  }
  return os.str();
}

double iterated_exp(int k, double r) {
  if (k < 0) throw BadParam("iterated_exp: k must be >= 0");
  double v = r;
  for (int i = 0; i < k; ++i) {
    if (v > kLogDblMax)
      throw OverflowDomain("iterated_exp: exp_" + std::to_string(k) + "(" +
                           std::to_string(r) + ") exceeds representable range");
    v = std::exp(v);
  }
  return v;
}

double iterated_log(int j, double r) {
  if (j < 0) throw BadParam("iterated_log: j must be >= 0");
  double v = r;
  for (int i = 0; i < j; ++i) v = std::log(std::max(v, 2.718281828459045235));
  return v;
}

GrowthFunction make_catalog(const std::string& name,
                            const std::map<std::string, double>& params) {
  GrowthFunction g;
  g.name = name;

  if (name == "ks" || name == "ks_dual") {
    const double beta = get_param(params, "beta", name);
    if (!(beta >= 0.0 && beta < 1.0))
      throw BadParam(name + ": beta must lie in [0, 1)");
    // ks: exponent 1+beta; ks_dual: exponent 1-beta. Both are
    // exp[c r^(1/c)] and the dual swaps c <-> 2-c.
    const double c = name == "ks" ? 1.0 + beta : 1.0 - beta;
    g.params["beta"] = beta;
    g.log_eval = [c](double r) {
      if (r < 0.0) throw BadParam("growth function: r must be >= 0");
      return c * std::pow(r, 1.0 / c);
    };
    g.claimed = {ClassTag::CPlusLog,     ClassTag::CPlusHalf,
                 ClassTag::LogExpConvex, ClassTag::LogX2Convex,
                 ClassTag::U0,           ClassTag::U1,
                 ClassTag::Increasing,   ClassTag::U3};
    if (c >= 1.0) g.claimed.insert(ClassTag::LogX1Convex);
    if (name == "ks") g.claimed.insert(ClassTag::U2);  // log u(r)/r = c r^(1/c-1)
    if (name == "ks_dual" && beta == 0.0) g.claimed.insert(ClassTag::U2);
    g.dual_spec = {{name == "ks" ? "ks_dual" : "ks", {{"beta", beta}}}};
    return g;
  }

  if (name == "exp_k") {
    const double kd = get_param(params, "k", name);
    const int k = static_cast<int>(kd);
    if (k < 1 || kd != k) throw BadParam("exp_k: k must be an integer >= 1");
    if (k > 5) throw BadParam("exp_k: k > 5 is not representable in binary64");
    g.params["k"] = k;
    g.log_eval = [k](double r) {
      if (r < 0.0) throw BadParam("growth function: r must be >= 0");
      return iterated_exp(k - 1, r);
    };
    g.r_max = exp_k_domain_cap(k);
    g.claimed = {ClassTag::CPlusLog,     ClassTag::CPlusHalf,
                 ClassTag::LogExpConvex, ClassTag::LogX1Convex,
                 ClassTag::LogX2Convex,  ClassTag::Increasing,
                 ClassTag::U3};
    if (k == 1) {
      g.claimed.insert(ClassTag::U0);
      g.claimed.insert(ClassTag::U1);
      g.claimed.insert(ClassTag::U2);
      g.dual_spec = {{"exp_scaled", {{"a", 1.0}}}};
    }
    return g;
  }

  if (name == "bell_dual") {
    const double kd = get_param(params, "k", name);
    const int k = static_cast<int>(kd);
    if (k < 2 || kd != k) throw BadParam("bell_dual: k must be an integer >= 2");
    g.params["k"] = k;
    g.log_eval = [k](double r) {
      if (r < 0.0) throw BadParam("growth function: r must be >= 0");
      if (r == 0.0) return 0.0;
      return 2.0 * std::sqrt(r * iterated_log(k - 1, std::sqrt(r)));
    };
    g.claimed = {ClassTag::CPlusLog,   ClassTag::CPlusHalf,
                 ClassTag::LogExpConvex, ClassTag::LogX2Convex,
                 ClassTag::U0,         ClassTag::U1,
                 ClassTag::U2,         ClassTag::Increasing,
                 ClassTag::U3};
    return g;
  }

  if (name == "exp_scaled") {
    const double a = get_param(params, "a", name);
    if (!(a > 0.0)) throw BadParam("exp_scaled: a must be > 0");
    g.params["a"] = a;
    g.log_eval = [a](double r) {
      if (r < 0.0) throw BadParam("growth function: r must be >= 0");
      return a * r;
    };
    g.claimed = {ClassTag::CPlusLog,     ClassTag::CPlusHalf,
                 ClassTag::LogExpConvex, ClassTag::LogX1Convex,
                 ClassTag::LogX2Convex,  ClassTag::U0,
                 ClassTag::U1,           ClassTag::U2,
                 ClassTag::Increasing,   ClassTag::U3};
    g.dual_spec = {{"exp_scaled", {{"a", 1.0 / a}}}};
    return g;
  }

  throw BadParam("make_catalog: unknown family '" + name + "'");
}

std::vector<CatalogEntry> catalog_entries() {
  return {
      {"ks", "beta", "exp[(1+beta) r^(1/(1+beta))], beta in [0,1)"},
      {"ks_dual", "beta", "exp[(1-beta) r^(1/(1-beta))], beta in [0,1)"},
      {"exp_k", "k", "k-fold iterated exponential, k in [1,5]"},
      {"bell_dual", "k", "exp[2 sqrt(r log_{k-1} sqrt(r))], k >= 2"},
      {"exp_scaled", "a", "exp(a r), a > 0"},
  };
}

}  // namespace ckstk
