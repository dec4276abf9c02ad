#include "cfdyn/csv.hpp"

#include <charconv>
#include <cmath>

namespace cfdyn {

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

void CsvWriter::meta(std::string_view key, std::string_view value) { os_ << "# " << key << ": " << value << '\n'; }

void CsvWriter::header(std::initializer_list<std::string_view> columns) {
  bool first = true;
  for (auto c : columns) {
    if (!first) os_ << ',';
    os_ << c;
    first = false;
  }
  os_ << '\n';
}

void CsvWriter::row(std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) os_ << ',';
    os_ << format_double(v);
    first = false;
  }
  os_ << '\n';
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) os_ << ',';
    os_ << cells[i];
  }
  os_ << '\n';
}

}  // namespace cfdyn
