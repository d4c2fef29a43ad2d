#pragma once

#include "mvtreelet/matrix.hpp"

#include <filesystem>
#include <string>

namespace mvt {

/// Parses the plain matrix CSV format: comma-separated decimal fields, one
/// row per line, no header. Rejects ragged rows (naming the line) and
/// non-finite values.
Matrix read_matrix(const std::filesystem::path& path);

/// Parses matrix CSV from a string (same rules as read_matrix).
Matrix parse_matrix_csv(const std::string& text, const std::string& origin = "<string>");

/// Writes matrix CSV with shortest round-trip decimal rendering; reading the
/// file back yields bit-identical values.
void write_matrix(const std::filesystem::path& path, const Matrix& m);

/// Matrix CSV as a string (same rendering as write_matrix).
std::string matrix_to_csv(const Matrix& m);

/// Shortest decimal text that parses back to exactly this double.
std::string format_double(double value);

/// Writes a binary PGM (P5, maxval 255) heatmap, min-max normalized;
/// constant matrices map to mid-gray 128.
void write_heatmap(const std::filesystem::path& path, const Matrix& m);

} // namespace mvt
