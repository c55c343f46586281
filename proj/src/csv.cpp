#include "qdm/csv.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "qdm/errors.hpp"

namespace qdm {

std::size_t Table::column(std::string_view name) const {
  auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw SpecError("table has no column '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - header.begin());
}

double Table::number(std::size_t row, std::string_view name) const {
  return std::get<double>(rows.at(row).at(column(name)));
}

const std::string& Table::text(std::size_t row, std::string_view name) const {
  return std::get<std::string>(rows.at(row).at(column(name)));
}

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

namespace {

std::string quote(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void append_row(std::string& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out += ',';
    out += quote(fields[i]);
  }
  out += '\n';
}

}  // namespace

std::string to_csv(const Table& table) {
  std::string out;
  append_row(out, table.header);
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size()) {
      throw SpecError("table row has " + std::to_string(row.size()) + " cells for " +
                      std::to_string(table.header.size()) + " columns");
    }
    std::vector<std::string> fields;
    fields.reserve(row.size());
    for (const auto& cell : row) {
      if (const auto* d = std::get_if<double>(&cell)) fields.push_back(format_double(*d));
      else fields.push_back(std::get<std::string>(cell));
    }
    append_row(out, fields);
  }
  return out;
}

void emit_csv(const Table& table, const std::filesystem::path& path) {
  const std::string text = to_csv(table);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::vector<std::vector<std::string>> read_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool row_open = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    row_open = true;
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      row.push_back(std::move(field));
      field.clear();
      rows.push_back(std::move(row));
      row.clear();
      row_open = false;
    } else if (c != '\r') {
      field += c;
    }
  }
  if (quoted) throw SpecError("unterminated quoted CSV field");
  if (row_open) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace qdm
