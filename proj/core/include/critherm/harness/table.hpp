#pragma once

#include "critherm/harness/config.hpp"

#include <deque>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace critherm::harness {

/// Row-aligned named numeric columns plus ordered string metadata.
class ResultTable {
 public:
  void set_meta(const std::string& key, std::string value);
  const std::string* meta(const std::string& key) const;
  const std::vector<std::pair<std::string, std::string>>& metadata() const { return metadata_; }

  /// Adds an empty column, or returns the existing one. The reference stays
  /// valid when further columns are added.
  std::vector<double>& add_column(const std::string& name);
  const std::vector<double>& column(const std::string& name) const;
  bool has_column(const std::string& name) const;
  const std::deque<std::pair<std::string, std::vector<double>>>& columns() const {
    return columns_;
  }

  std::size_t rows() const;
  /// Throws InvalidArgument unless every column has the same length.
  void check_aligned() const;

 private:
  std::vector<std::pair<std::string, std::string>> metadata_;
  // deque keeps references from add_column valid as columns are appended.
  std::deque<std::pair<std::string, std::vector<double>>> columns_;
};

/// Shortest round-trip form with 17 significant digits; nan, inf, -inf.
std::string format_double(double value);

void write_csv(const ResultTable& table, std::ostream& out);
void write_json(const ResultTable& table, std::ostream& out);
ResultTable read_csv(std::istream& in);

/// Writes to path; Error(Io) names the path on failure.
void emit(const ResultTable& table, const std::filesystem::path& path, OutputFormat format);

}  // namespace critherm::harness
