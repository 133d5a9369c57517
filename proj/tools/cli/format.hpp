#pragma once

#include <string>
#include <vector>

namespace tlpulse::cli {

// Shortest round-trip decimal form; the same double always prints the same.
std::string format_number(double v);

// CSV with '#' comment lines on top.
class CsvWriter {
 public:
  void comment(const std::string& line);
  void header(const std::vector<std::string>& columns);
  void row(const std::vector<std::string>& cells);
  const std::string& str() const noexcept { return text_; }

 private:
  void line(const std::vector<std::string>& cells);

  std::string text_;
};

}  // namespace tlpulse::cli
