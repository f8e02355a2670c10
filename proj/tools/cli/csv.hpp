#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace cli {

// Formats a double with six significant digits.
std::string fmt(double value);

// Writes one CSV artifact. The file only survives if commit() runs;
// abandoning the writer (error paths) deletes the partial file.
class CsvFile {
 public:
  CsvFile(const std::string& path, const std::vector<std::string>& header);
  ~CsvFile();
  CsvFile(const CsvFile&) = delete;
  CsvFile& operator=(const CsvFile&) = delete;

  void row(const std::vector<std::string>& fields);
  void commit();

 private:
  void line(const std::vector<std::string>& fields);

  std::string path_;
  std::ofstream out_;
  bool committed_ = false;
};

}  // namespace cli
