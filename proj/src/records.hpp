#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace qtn {

// Flat record value; monostate renders as an empty CSV cell / omitted JSON key.
using Value = std::variant<std::monostate, bool, std::int64_t, double, std::string>;

struct Record {
  std::vector<std::pair<std::string, Value>> fields;

  Record& set(const std::string& key, Value v) {
    for (auto& f : fields)
      if (f.first == key) {
        f.second = std::move(v);
        return *this;
      }
    fields.emplace_back(key, std::move(v));
    return *this;
  }
};

// Column order fixed by first appearance; rows emitted in insertion order, so
// identical inputs give bitwise-identical tables.
class Table {
 public:
  void append(Record r);
  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<Record>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }

 private:
  std::vector<std::string> columns_;
  std::vector<Record> rows_;
};

enum class TableFormat { csv, jsonl };

// Doubles rendered with 17 significant digits in both formats.
std::string format_double(double v);
void write_csv(const Table&, std::ostream&);
void write_jsonl(const Table&, std::ostream&);
void write_table(const Table&, TableFormat, std::ostream&);
TableFormat parse_format(const std::string& name);

}  // namespace qtn
