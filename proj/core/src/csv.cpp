#include "giantwg/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace giantwg {

std::string format_real(double value, int significant_digits) {
  if (value == 0.0) return "0";
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                       std::chars_format::general, significant_digits);
  return std::string(buf.data(), ptr);
}

std::string csv_line(std::span<const CsvCell> cells) {
  std::string line;
  bool first = true;
  for (const CsvCell& c : cells) {
    if (!first) line += ',';
    first = false;
    if (c) line += format_real(*c);
  }
  return line;
}

std::string csv_line(std::initializer_list<CsvCell> cells) {
  return csv_line(std::span<const CsvCell>(cells.begin(), cells.size()));
}

void CsvWriter::comment(std::string_view text) { out_ << "# " << text << '\n'; }

void CsvWriter::header(std::string_view columns) { out_ << columns << '\n'; }

void CsvWriter::row(std::initializer_list<CsvCell> cells) { out_ << csv_line(cells) << '\n'; }

void CsvWriter::row(std::span<const CsvCell> cells) { out_ << csv_line(cells) << '\n'; }

}  // namespace giantwg
