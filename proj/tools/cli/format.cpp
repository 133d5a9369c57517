#include "format.hpp"

#include <array>
#include <charconv>

namespace tlpulse::cli {

std::string format_number(double v) {
  if (v == 0.0) return "0";  // no "-0"
  std::array<char, 32> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) return "nan";
  return std::string(buf.data(), end);
}

void CsvWriter::comment(const std::string& line) {
  text_ += "# ";
  text_ += line;
  text_ += '\n';
}

void CsvWriter::header(const std::vector<std::string>& columns) { line(columns); }

void CsvWriter::row(const std::vector<std::string>& cells) { line(cells); }

void CsvWriter::line(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) text_ += ',';
    text_ += cells[i];
  }
  text_ += '\n';
}

}  // namespace tlpulse::cli
