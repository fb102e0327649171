#include "equidist/minop.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "equidist/error.hpp"

namespace equidist {

FunctionRef min_family(std::vector<FunctionRef> members) {
  return make_min_family(std::move(members));
}

namespace {

std::vector<EpigraphSet> member_epigraphs(const std::vector<FunctionRef>& family) {
  if (family.empty()) throw invalid_input("minop: family must be nonempty");
  std::vector<EpigraphSet> out;
  out.reserve(family.size());
  for (const FunctionRef& f : family) out.emplace_back(f);
  return out;
}

}  // namespace

SandwichReport sandwich_check(const FocalSet& k, const std::vector<FunctionRef>& family,
                              const std::vector<double>& xs, double tol,
                              const ScanOptions& opts) {
  const auto members = member_epigraphs(family);
  const EpigraphSet min_epi(min_family(family));

  SandwichReport report;
  for (double x : xs) {
    SandwichReport::Row row;
    row.x = x;
    row.min_member_lower = std::numeric_limits<double>::infinity();
    row.min_member_upper = std::numeric_limits<double>::infinity();
    for (const EpigraphSet& epi : members) {
      const VerticalScan scan = scan_vertical(x, k, epi, opts);
      row.min_member_lower = std::min(row.min_member_lower, scan.g_minus);
      row.min_member_upper = std::min(row.min_member_upper, scan.g_plus);
    }
    const VerticalScan scan = scan_vertical(x, k, min_epi, opts);
    row.family_lower = scan.g_minus;
    row.family_upper = scan.g_plus;
    const bool holds = row.min_member_lower <= row.family_lower + tol &&
                       row.family_lower <= row.family_upper &&
                       row.family_upper <= row.min_member_upper + tol;
    if (!holds) report.violations.push_back(report.rows.size());
    report.rows.push_back(row);
  }
  report.ok = report.violations.empty();
  return report;
}

CommuteReport min_commute_check(const FocalSet& k, const std::vector<FunctionRef>& family,
                                const std::vector<double>& xs, double tol,
                                const ScanOptions& opts) {
  const auto members = member_epigraphs(family);
  const EpigraphSet min_epi(min_family(family));

  CommuteReport report;
  report.xs = xs;
  for (double x : xs) {
    double member_min = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < members.size(); ++i) {
      const VerticalScan scan = scan_vertical(x, k, members[i], opts);
      if (scan.roots.size() != 1) {
        std::ostringstream os;
        os << "min_commute_check: member " << i << " has " << scan.roots.size()
           << " equidistant roots at x = " << x << "; expected a unique one";
        throw invalid_input(os.str());
      }
      member_min = std::min(member_min, scan.roots.front());
    }
    const VerticalScan scan = scan_vertical(x, k, min_epi, opts);
    report.family_g.push_back(0.5 * (scan.g_minus + scan.g_plus));
    report.min_member_g.push_back(member_min);
    report.worst = std::max(report.worst, std::abs(report.family_g.back() - member_min));
  }
  report.ok = report.worst <= tol;
  return report;
}

}  // namespace equidist
