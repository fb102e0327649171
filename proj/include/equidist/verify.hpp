#pragma once

#include <string>
#include <vector>

#include "equidist/function.hpp"

namespace equidist {

/// The worked instances every suite runs against: the three trichotomy
/// functions, a shifted parabola, and the anisotropic quadratic form.
struct CatalogEntry {
  std::string name;
  FunctionRef f;
  double radius;
  double t_lo, t_hi;  // trace window, strictly inside the admissible domain
};

const std::vector<CatalogEntry>& catalog_1d();
FunctionRef paper_quadform();

struct CriterionResult {
  std::string id;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct VerifyOptions {
  /// Run only criteria whose id contains this substring (empty = all).
  std::string only;
  /// Test hook: corrupt the compatibility samples so the suite must fail.
  bool inject_perturbation = false;
};

/// Runs the acceptance criteria and returns one result per criterion.
std::vector<CriterionResult> run_acceptance(const VerifyOptions& opts = {});

}  // namespace equidist
