#include "critherm/harness/table.hpp"

#include "critherm/error.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace critherm::harness {

void ResultTable::set_meta(const std::string& key, std::string value) {
  for (auto& [k, v] : metadata_) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  metadata_.emplace_back(key, std::move(value));
}

const std::string* ResultTable::meta(const std::string& key) const {
  for (const auto& [k, v] : metadata_) {
    if (k == key) return &v;
  }
  return nullptr;
}

std::vector<double>& ResultTable::add_column(const std::string& name) {
  for (auto& [k, v] : columns_) {
    if (k == name) return v;
  }
  return columns_.emplace_back(name, std::vector<double>{}).second;
}

const std::vector<double>& ResultTable::column(const std::string& name) const {
  for (const auto& [k, v] : columns_) {
    if (k == name) return v;
  }
  fail(ErrorCode::InvalidArgument, "table has no column '" + name + "'");
}

bool ResultTable::has_column(const std::string& name) const {
  for (const auto& [k, v] : columns_) {
    if (k == name) return true;
  }
  return false;
}

std::size_t ResultTable::rows() const { return columns_.empty() ? 0 : columns_.front().second.size(); }

void ResultTable::check_aligned() const {
  for (const auto& [k, v] : columns_) {
    if (v.size() != rows()) {
      fail(ErrorCode::InvalidArgument, "column '" + k + "' has " + std::to_string(v.size()) +
                                           " rows, expected " + std::to_string(rows()));
    }
  }
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

std::string quote_csv(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

double parse_double(const std::string& text) {
  if (text == "nan") return std::nan("");
  if (text == "inf") return INFINITY;
  if (text == "-inf") return -INFINITY;
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    fail(ErrorCode::InvalidArgument, "cannot parse '" + text + "' as a number");
  }
  return v;
}

}  // namespace

void write_csv(const ResultTable& table, std::ostream& out) {
  table.check_aligned();
  for (const auto& [k, v] : table.metadata()) out << "# " << k << ": " << v << "\n";
  const auto& cols = table.columns();
  for (std::size_t c = 0; c < cols.size(); ++c) {
    out << (c ? "," : "") << quote_csv(cols[c].first);
  }
  out << "\n";
  for (std::size_t r = 0; r < table.rows(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      out << (c ? "," : "") << format_double(cols[c].second[r]);
    }
    out << "\n";
  }
}

void write_json(const ResultTable& table, std::ostream& out) {
  table.check_aligned();
  // Hand-written so float formatting matches the CSV path exactly.
  out << "{\"metadata\":{";
  bool first = true;
  for (const auto& [k, v] : table.metadata()) {
    out << (first ? "" : ",") << nlohmann::json(k).dump() << ":" << nlohmann::json(v).dump();
    first = false;
  }
  out << "},\"columns\":{";
  first = true;
  for (const auto& [name, values] : table.columns()) {
    out << (first ? "" : ",") << nlohmann::json(name).dump() << ":[";
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double v = values[i];
      out << (i ? "," : "") << (std::isfinite(v) ? format_double(v) : "null");
    }
    out << "]";
    first = false;
  }
  out << "}}\n";
}

ResultTable read_csv(std::istream& in) {
  ResultTable table;
  std::string line;
  std::vector<std::string> names;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.rfind("# ", 0) == 0) {
      const auto colon = line.find(": ");
      if (colon != std::string::npos) table.set_meta(line.substr(2, colon - 2), line.substr(colon + 2));
      continue;
    }
    if (line.empty()) continue;
    auto fields = split_csv(line);
    if (names.empty()) {
      names = std::move(fields);
      for (const auto& n : names) table.add_column(n);
      continue;
    }
    if (fields.size() != names.size()) {
      fail(ErrorCode::InvalidArgument, "CSV line " + std::to_string(line_no) + " has " +
                                           std::to_string(fields.size()) + " fields, expected " +
                                           std::to_string(names.size()));
    }
    for (std::size_t c = 0; c < names.size(); ++c) {
      table.add_column(names[c]).push_back(parse_double(fields[c]));
    }
  }
  return table;
}

void emit(const ResultTable& table, const std::filesystem::path& path, OutputFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::Io, "cannot open '" + path.string() + "' for writing");
  if (format == OutputFormat::Csv) {
    write_csv(table, out);
  } else {
    write_json(table, out);
  }
  out.flush();
  if (!out) fail(ErrorCode::Io, "write to '" + path.string() + "' failed");
}

}  // namespace critherm::harness
