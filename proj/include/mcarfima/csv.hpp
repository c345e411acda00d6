#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

namespace mcarfima {

/// Formats a real with 12 significant digits ("nan" / "inf" for non-finite).
std::string format_number(double value);

/// Quotes a field when it contains a delimiter, quote or line break.
std::string quote_field(std::string_view field);

/// Comma-delimited writer: header row first, LF line endings.
class CsvWriter {
 public:
  /// Throws Error if the file cannot be opened for writing.
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);

  void row(const std::vector<std::string>& fields);
  void close();

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

struct SeriesColumns {
  std::vector<double> x;
  std::vector<double> y;
};

/// Reads the x and y columns (by header name) of a delimited series file.
SeriesColumns read_series_csv(const std::filesystem::path& path);

}  // namespace mcarfima
