#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace poltyrev::cli {

enum class Format { csv, json };

using Cell = std::variant<double, std::int64_t, std::uint64_t, std::string>;

/// Shortest decimal that round-trips to the same double; "nan", "inf", "-inf"
/// for non-finite values.
std::string format_double(double v);

/// Writes rows as they arrive. CSV gets a single header line before the first
/// row; JSON-lines writes one object per row with NaN and infinities as null.
class RowWriter {
 public:
  RowWriter(std::ostream& out, Format format, std::vector<std::string> columns);

  void write(const std::vector<Cell>& row);
  /// Emits the CSV header even if no rows were written.
  void finish();

  [[nodiscard]] const std::vector<std::string>& columns() const { return columns_; }

 private:
  void header();

  std::ostream& out_;
  Format format_;
  std::vector<std::string> columns_;
  bool header_done_ = false;
};

}  // namespace poltyrev::cli
