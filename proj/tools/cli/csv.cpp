#include "csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace cli {

std::string fmt(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.6g", value);
  return buffer;
}

CsvFile::CsvFile(const std::string& path,
                 const std::vector<std::string>& header)
    : path_(path), out_(path) {
  if (!out_) throw std::runtime_error("cannot open '" + path + "' for writing");
  line(header);
}

CsvFile::~CsvFile() {
  if (!committed_) {
    out_.close();
    std::remove(path_.c_str());
  }
}

void CsvFile::line(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out_ << ',';
    const std::string& field = fields[i];
    if (field.find(',') != std::string::npos)
      out_ << '"' << field << '"';
    else
      out_ << field;
  }
  out_ << '\n';
  if (!out_) throw std::runtime_error("write to '" + path_ + "' failed");
}

void CsvFile::row(const std::vector<std::string>& fields) { line(fields); }

void CsvFile::commit() {
  out_.flush();
  out_.close();
  if (!out_) throw std::runtime_error("flushing '" + path_ + "' failed");
  committed_ = true;
}

}  // namespace cli
