#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace superfock {

/// Locale-independent rendering of a double with 12 significant digits
/// (general format, like "%.12g" under the C locale).
std::string format_double(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Header + rows, comma-separated, '\n' line endings, no trailing spaces.
/// Cells are written verbatim; numeric cells should come preformatted
/// through format_double so identical inputs give identical bytes.
std::string csv_to_string(const CsvTable& t);

/// Writes text to path, creating parent directories as needed.
void write_text_file(const std::filesystem::path& path,
                     const std::string& text);

}  // namespace superfock
