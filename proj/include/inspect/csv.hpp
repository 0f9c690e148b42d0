#pragma once

#include <iosfwd>
#include <string>

#include "inspect/types.hpp"

namespace inspect {

struct CsvOptions {
    char delimiter = ',';
    /// Skip the first line.
    bool header = false;
    /// The file holds time in rows and coordinates in columns (n x p).
    bool transpose = false;
};

/// Reads a numeric matrix, rows = coordinates and columns = time unless transposed.
///
/// Blank lines are ignored. Ragged rows raise IoError naming the line; cells that are
/// not finite numbers raise ParseError with line and column (both 1-based).
Matrix read_matrix_csv(std::istream& in, const CsvOptions& options = {});
Matrix read_matrix_csv(const std::string& path, const CsvOptions& options = {});

/// Writes shortest round-trip decimal representations, one matrix row per line.
void write_matrix_csv(std::ostream& out, MatrixRef m, char delimiter = ',');
void write_matrix_csv(const std::string& path, MatrixRef m, char delimiter = ',');

/// Shortest decimal string that parses back to exactly x.
std::string format_double(double x);

}  // namespace inspect
