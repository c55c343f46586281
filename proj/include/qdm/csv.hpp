#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace qdm {

using Cell = std::variant<double, std::string>;

struct Table {
  std::vector<std::string> header;  // column names carry units, e.g. "I_S [e*Gamma0]"
  std::vector<std::vector<Cell>> rows;

  std::size_t column(std::string_view name) const;
  double number(std::size_t row, std::string_view name) const;
  const std::string& text(std::size_t row, std::string_view name) const;
};

// 17 significant digits, so parsing the text gives back the same double.
std::string format_double(double value);

// RFC 4180 style: comma separated, quoted when needed, LF line endings.
std::string to_csv(const Table& table);
void emit_csv(const Table& table, const std::filesystem::path& path);

// Splits CSV text into rows of raw (unquoted) fields.
std::vector<std::vector<std::string>> read_csv(std::string_view text);

}  // namespace qdm
