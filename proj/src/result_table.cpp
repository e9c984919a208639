#include "rabsim/result_table.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace rabsim {

namespace {

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

void write_csv(const ResultTable& table, std::ostream& out) {
  out << "# provenance: " << table.provenance << "\n";
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out << ",";
    out << table.columns[c].name << "[" << table.columns[c].unit << "]";
  }
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ",";
      out << format_number(row[c]);
    }
    out << "\n";
  }
}

std::string format_csv(const ResultTable& table) {
  std::ostringstream os;
  write_csv(table, os);
  return os.str();
}

void write_csv_file(const ResultTable& table, const std::string& path) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
    write_csv(table, out);
    if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  fs::rename(tmp, target);
}

}  // namespace rabsim
