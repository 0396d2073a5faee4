#pragma once

#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>

namespace giantwg {

inline constexpr int kCsvDigits = 12;

// printf("%.*g") equivalent that never consults the locale. Negative zero
// prints as "0".
std::string format_real(double value, int significant_digits = kCsvDigits);

// A CSV cell; std::nullopt is written as an empty field.
using CsvCell = std::optional<double>;

std::string csv_line(std::span<const CsvCell> cells);
std::string csv_line(std::initializer_list<CsvCell> cells);

// Header/comment/row writer with '\n' line endings.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void comment(std::string_view text);
  void header(std::string_view columns);
  void row(std::initializer_list<CsvCell> cells);
  void row(std::span<const CsvCell> cells);

 private:
  std::ostream& out_;
};

}  // namespace giantwg
