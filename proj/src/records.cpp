#include "records.hpp"

#include <cstdio>
#include <ostream>

#include "errors.hpp"

namespace qtn {

void Table::append(Record r) {
  for (const auto& f : r.fields) {
    bool known = false;
    for (const auto& col : columns_)
      if (col == f.first) {
        known = true;
        break;
      }
    if (!known) columns_.push_back(f.first);
  }
  rows_.push_back(std::move(r));
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

const Value* find_field(const Record& r, const std::string& key) {
  for (const auto& f : r.fields)
    if (f.first == key) return &f.second;
  return nullptr;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

std::string json_escape(const std::string& s) {
  std::string out = "\"";
  for (const char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += "\"";
  return out;
}

std::string value_text(const Value& v, bool json) {
  if (std::holds_alternative<std::monostate>(v)) return "";
  if (const bool* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
  if (const std::int64_t* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
  if (const double* d = std::get_if<double>(&v)) return format_double(*d);
  const std::string& s = std::get<std::string>(v);
  return json ? json_escape(s) : csv_escape(s);
}

}  // namespace

void write_csv(const Table& t, std::ostream& os) {
  const auto& cols = t.columns();
  for (std::size_t i = 0; i < cols.size(); ++i)
    os << (i ? "," : "") << csv_escape(cols[i]);
  os << "\n";
  for (const auto& row : t.rows()) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (i) os << ",";
      if (const Value* v = find_field(row, cols[i])) os << value_text(*v, false);
    }
    os << "\n";
  }
}

void write_jsonl(const Table& t, std::ostream& os) {
  for (const auto& row : t.rows()) {
    os << "{";
    bool first = true;
    for (const auto& f : row.fields) {
      if (std::holds_alternative<std::monostate>(f.second)) continue;
      if (!first) os << ",";
      first = false;
      os << json_escape(f.first) << ":" << value_text(f.second, true);
    }
    os << "}\n";
  }
}

void write_table(const Table& t, TableFormat f, std::ostream& os) {
  if (f == TableFormat::csv) write_csv(t, os);
  else write_jsonl(t, os);
}

TableFormat parse_format(const std::string& name) {
  if (name == "csv") return TableFormat::csv;
  if (name == "jsonl") return TableFormat::jsonl;
  fail(ErrorCode::invalid_argument, "unknown output format: " + name);
}

}  // namespace qtn
