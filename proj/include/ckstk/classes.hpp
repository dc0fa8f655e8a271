#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ckstk/growth.hpp"

namespace ckstk {

// Three-valued verdict shared by class evidence and condition checks. For
// limit-type statements PASS never means "proved": it means no violation was
// found and the observed trend is decisive under the configured window.
enum class Status { Pass, Fail, Inconclusive };

std::string status_name(Status s);

struct GridSpec {
  double r_min = 0.0;
  double r_max = 0.0;
  int points = 0;

  // geometric grid r = 2^j, j = -20..40
  static GridSpec default_grid();
  std::vector<double> abscissas() const;
  // same grid clipped to [0, cap]
  std::vector<double> abscissas_capped(double cap) const;
};

struct ClassEvidence {
  ClassTag cls;
  Status verdict = Status::Inconclusive;
  // For convexity classes: the violating abscissa pair and midpoint, in the
  // class's transform coordinate. FAIL always carries one.
  std::optional<std::array<double, 3>> witness;
  double margin = 0.0;  // worst slack observed, log scale
  std::string note;
};

struct ClassCheckOptions {
  double slack = 1e-8;            // comparison slack, log scale
  double limit_threshold = 50.0;  // final ratio must exceed this for limit classes
  int trend_window = 10;
};

ClassEvidence check_class(const GrowthFunction& u, ClassTag cls,
                          const GridSpec& grid = GridSpec::default_grid(),
                          const ClassCheckOptions& opt = {});

// U0..U3 in one sweep.
std::vector<ClassEvidence> check_u_conditions(
    const GrowthFunction& u, const GridSpec& grid = GridSpec::default_grid(),
    const ClassCheckOptions& opt = {});

}  // namespace ckstk
