#include "equidist/format.hpp"

#include <charconv>
#include <cmath>

#include "equidist/error.hpp"

namespace equidist {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& provenance,
                     const std::vector<std::string>& columns)
    : out_(path), width_(columns.size()) {
  if (!out_) throw invalid_input("csv: cannot open output file " + path);
  for (const std::string& line : provenance) out_ << "# " << line << "\n";
  for (std::size_t i = 0; i < columns.size(); ++i)
    out_ << columns[i] << (i + 1 < columns.size() ? "," : "");
  out_ << "\n";
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != width_) throw invalid_input("csv: row width mismatch");
  for (std::size_t i = 0; i < values.size(); ++i)
    out_ << format_double(values[i]) << (i + 1 < values.size() ? "," : "");
  out_ << "\n";
}

void CsvWriter::raw_row(const std::vector<std::string>& cells) {
  if (cells.size() != width_) throw invalid_input("csv: row width mismatch");
  for (std::size_t i = 0; i < cells.size(); ++i)
    out_ << cells[i] << (i + 1 < cells.size() ? "," : "");
  out_ << "\n";
}

}  // namespace equidist
