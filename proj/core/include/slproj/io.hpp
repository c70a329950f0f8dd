#pragma once

#include <string>
#include <string_view>

#include "slproj/matrix.hpp"

namespace slproj::io {

/// Parses either the matrix JSON object {"n": int, "data": [n*n row-major
/// reals]} or CSV (n rows of n comma-separated values). Throws ParseError on
/// malformed input, ShapeError on inconsistent dimensions, NonFiniteError on
/// NaN/Inf entries.
MatrixN parse_matrix(std::string_view text);

/// Matrix JSON with 17 significant digits; parse_matrix(format_matrix(A))
/// reproduces A bitwise.
std::string format_matrix(const MatrixN& a);

MatrixN read_matrix_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/// Round-trip safe rendering of a double (17 significant digits).
std::string format_double(double v);

}  // namespace slproj::io
