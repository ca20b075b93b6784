#pragma once

#include <algorithm>
#include <cstdio>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

namespace lcn {

/// 17 significant digits: enough to round-trip any double.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Comma-separated rows with a header. Cells are stored as text.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  class Row {
   public:
    Row& operator<<(double v) { cells_.push_back(format_double(v)); return *this; }
    Row& operator<<(int v) { cells_.push_back(std::to_string(v)); return *this; }
    Row& operator<<(long v) { cells_.push_back(std::to_string(v)); return *this; }
    Row& operator<<(long long v) { cells_.push_back(std::to_string(v)); return *this; }
    Row& operator<<(unsigned long v) { cells_.push_back(std::to_string(v)); return *this; }
    Row& operator<<(bool v) { cells_.push_back(v ? "1" : "0"); return *this; }
    Row& operator<<(const std::string& v) { cells_.push_back(v); return *this; }
    Row& operator<<(const char* v) { cells_.push_back(v); return *this; }
    const std::vector<std::string>& cells() const { return cells_; }

   private:
    std::vector<std::string> cells_;
  };

  Row& row() { rows_.emplace_back(); return rows_.back(); }
  std::size_t size() const { return rows_.size(); }
  const std::vector<std::string>& header() const { return header_; }
  const std::vector<Row>& rows() const { return rows_; }

  std::string str() const {
    std::ostringstream out;
    write_line(out, header_);
    for (const Row& r : rows_) write_line(out, r.cells());
    return out.str();
  }

  /// Space-padded columns for terminals.
  std::string aligned() const;

 private:
  static void write_line(std::ostream& out, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ',';
      out << cells[i];
    }
    out << '\n';
  }

  std::vector<std::string> header_;
  std::vector<Row> rows_;
};

inline std::string CsvTable::aligned() const {
  std::vector<std::size_t> width(header_.size(), 0);
  const auto widen = [&width](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size() && i < width.size(); ++i)
      width[i] = std::max(width[i], cells[i].size());
  };
  widen(header_);
  for (const Row& r : rows_) widen(r.cells());
  std::ostringstream out;
  const auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << "  ";
      out << std::string(width[i] - cells[i].size(), ' ') << cells[i];
    }
    out << '\n';
  };
  line(header_);
  for (const Row& r : rows_) line(r.cells());
  return out.str();
}

}  // namespace lcn
