#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace otoclab::io {

/// Shortest text that reads back to the same double: %.17g.
std::string format_double(double x);

/// A CSV held in memory and written in one go, so a crash never leaves half a file.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
  std::string str() const;
};

/// Writes to a temporary sibling and renames it into place.
void write_text_atomic(const std::filesystem::path& path, const std::string& text);
void write_csv(const std::filesystem::path& path, const CsvTable& table);

}  // namespace otoclab::io
