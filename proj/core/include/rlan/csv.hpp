#pragma once

#include <concepts>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>

namespace rlan {

// Shortest round-trip scientific representation, e.g. "2.5e-01".
std::string format_double(double value);

// Comma-separated rows with LF endings. Floating-point cells are written with
// format_double; integers and strings verbatim.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void header(std::initializer_list<std::string_view> columns);

  template <typename... Cells>
  void row(const Cells&... cells) {
    bool first = true;
    ((write_cell(cells, first)), ...);
    out_ << '\n';
  }

 private:
  template <typename T>
  void write_cell(const T& cell, bool& first) {
    if (!first) out_ << ',';
    first = false;
    if constexpr (std::floating_point<T>) {
      out_ << format_double(static_cast<double>(cell));
    } else {
      out_ << cell;
    }
  }

  std::ostream& out_;
};

}  // namespace rlan
