#include "slproj/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace slproj::io {

namespace {

MatrixN from_n_and_data(int n, std::vector<double> data) {
  if (n < 2) throw ShapeError("parse_matrix: n must be >= 2");
  if (data.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
    throw ShapeError("parse_matrix: data length does not equal n*n");
  for (double v : data)
    if (!std::isfinite(v)) throw NonFiniteError("parse_matrix: non-finite entry");
  return MatrixN(n, std::move(data));
}

MatrixN parse_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("parse_matrix: invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("data"))
    throw ParseError("parse_matrix: expected an object with fields n and data");
  if (!j["n"].is_number_integer()) throw ParseError("parse_matrix: n must be an integer");
  if (!j["data"].is_array()) throw ParseError("parse_matrix: data must be an array");
  const int n = j["n"].get<int>();
  std::vector<double> data;
  data.reserve(j["data"].size());
  for (const auto& v : j["data"]) {
    if (!v.is_number()) throw ParseError("parse_matrix: data entries must be numbers");
    data.push_back(v.get<double>());
  }
  return from_n_and_data(n, std::move(data));
}

double parse_cell(std::string_view cell) {
  std::size_t begin = 0, end = cell.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(cell[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(cell[end - 1]))) --end;
  if (begin == end) throw ParseError("parse_matrix: empty CSV cell");
  double value = 0.0;
  const auto res = std::from_chars(cell.data() + begin, cell.data() + end, value);
  if (res.ec != std::errc{} || res.ptr != cell.data() + end)
    throw ParseError("parse_matrix: invalid CSV number '" + std::string(cell.substr(begin, end - begin)) + "'");
  return value;
}

MatrixN parse_csv(std::string_view text) {
  std::vector<std::vector<double>> rows;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos = eol + 1;
    bool blank = true;
    for (char ch : line)
      if (!std::isspace(static_cast<unsigned char>(ch))) blank = false;
    if (blank) continue;

    std::vector<double> row;
    std::size_t cell_start = 0;
    while (true) {
      const std::size_t comma = line.find(',', cell_start);
      row.push_back(parse_cell(line.substr(cell_start, comma - cell_start)));
      if (comma == std::string_view::npos) break;
      cell_start = comma + 1;
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("parse_matrix: empty input");
  const int n = static_cast<int>(rows.size());
  std::vector<double> data;
  data.reserve(static_cast<std::size_t>(n) * n);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n)
      throw ShapeError("parse_matrix: CSV rows and columns differ");
    data.insert(data.end(), row.begin(), row.end());
  }
  return from_n_and_data(n, std::move(data));
}

}  // namespace

MatrixN parse_matrix(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  if (i == text.size()) throw ParseError("parse_matrix: empty input");
  return text[i] == '{' ? parse_json(text.substr(i)) : parse_csv(text);
}

std::string format_double(double v) {
  char buf[40];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf, static_cast<std::size_t>(len));
}

std::string format_matrix(const MatrixN& a) {
  std::ostringstream out;
  out << "{\"n\": " << a.n() << ", \"data\": [";
  const auto& d = a.data();
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) out << ", ";
    out << format_double(d[i]);
  }
  out << "]}";
  return out.str();
}

MatrixN read_matrix_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_matrix(ss.str());
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << content;
  if (!out) throw IoError("write failed for " + path);
}

}  // namespace slproj::io
