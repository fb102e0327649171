#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace equidist {

/// Shortest round-trip decimal for a double; locale-independent, so repeated
/// runs produce byte-identical files.
std::string format_double(double v);

/// CSV emitter with '#'-prefixed provenance header lines.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& provenance,
            const std::vector<std::string>& columns);
  void row(const std::vector<double>& values);
  void raw_row(const std::vector<std::string>& cells);

 private:
  std::ofstream out_;
  std::size_t width_;
};

}  // namespace equidist
