#pragma once

#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace dispent::cli {

using Cell = std::variant<std::string, double, long long, bool>;

// Shortest decimal text that round-trips the double.
std::string format_double(double x);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}
  void add(std::vector<Cell> row);
  void write(std::ostream& os) const;
  std::size_t rows() const { return rows_.size(); }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<Cell>> rows_;
};

std::string sha256_hex(const std::string& bytes);

// Where CSV and the JSON summary go: a path, or stdout/stderr when empty.
struct OutputTarget {
  std::string csv_path;
  std::string json_path() const;
};

void emit(const OutputTarget& out, const CsvTable& table, const nlohmann::ordered_json& summary);

}  // namespace dispent::cli
