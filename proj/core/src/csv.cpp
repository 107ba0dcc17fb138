#include "rlan/csv.hpp"

#include <charconv>
#include <cmath>

namespace rlan {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::scientific);
  return std::string(buf, res.ptr);
}

void CsvWriter::header(std::initializer_list<std::string_view> columns) {
  bool first = true;
  for (auto c : columns) {
    if (!first) out_ << ',';
    first = false;
    out_ << c;
  }
  out_ << '\n';
}

}  // namespace rlan
