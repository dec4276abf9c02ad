#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cfdyn {

/// Shortest decimal string that round-trips the double.
std::string format_double(double v);

/// CSV with '#'-prefixed metadata lines followed by a header row.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}

  void meta(std::string_view key, std::string_view value);
  void header(std::initializer_list<std::string_view> columns);
  void row(std::initializer_list<double> values);
  void row(const std::vector<std::string>& cells);

 private:
  std::ostream& os_;
};

}  // namespace cfdyn
