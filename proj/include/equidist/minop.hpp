#pragma once

#include <vector>

#include "equidist/focal.hpp"
#include "equidist/function.hpp"
#include "equidist/vertical.hpp"

namespace equidist {

/// Pointwise minimum of the family; evaluation-only at crossings.
FunctionRef min_family(std::vector<FunctionRef> members);

/// Theorem-2 sandwich: min G_i^- <= G_min^- <= G_min^+ <= min G_i^+ at each x.
/// The min-family scan runs through the vertical solver on the min spec itself,
/// never through the per-member curves, so the comparison is non-circular.
struct SandwichReport {
  struct Row {
    double x = 0.0;
    double min_member_lower = 0.0;
    double family_lower = 0.0;
    double family_upper = 0.0;
    double min_member_upper = 0.0;
  };
  std::vector<Row> rows;
  std::vector<std::size_t> violations;  // indices into rows
  bool ok = false;
};

SandwichReport sandwich_check(const FocalSet& k, const std::vector<FunctionRef>& family,
                              const std::vector<double>& xs, double tol = 1e-7,
                              const ScanOptions& opts = {});

/// Commuting corollary: when every member has a unique equidistant root, the
/// min-family equidistant function equals the pointwise min of the members'.
struct CommuteReport {
  std::vector<double> xs;
  std::vector<double> family_g;      // G_min(x)
  std::vector<double> min_member_g;  // min_i G_i(x)
  double worst = 0.0;
  bool ok = false;
};

CommuteReport min_commute_check(const FocalSet& k, const std::vector<FunctionRef>& family,
                                const std::vector<double>& xs, double tol = 1e-7,
                                const ScanOptions& opts = {});

}  // namespace equidist
