#ifndef RABSIM_RESULT_TABLE_HPP
#define RABSIM_RESULT_TABLE_HPP

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

// Tabular results with unit-annotated columns and a provenance header.
// CSV output is deterministic: rerunning an identical configuration
// produces a bit-identical file.

namespace rabsim {

struct ResultTable {
  struct Column {
    std::string name;
    std::string unit;  // "us", "um", "rad", "1" for dimensionless
  };

  std::vector<Column> columns;
  std::vector<std::vector<double>> rows;
  std::string provenance;  // "<scenario-hash> <step> <nodes> <version>"
  std::vector<std::pair<std::string, double>> summary;  // stdout scalars
};

/// Format: "# provenance: ..." line, then "name[unit],..." header, then
/// one row per line with 12 significant digits.
void write_csv(const ResultTable& table, std::ostream& out);

/// Writes atomically (temp file + rename), so a failed run leaves no
/// partial output.
void write_csv_file(const ResultTable& table, const std::string& path);

std::string format_csv(const ResultTable& table);

}  // namespace rabsim

#endif  // RABSIM_RESULT_TABLE_HPP
