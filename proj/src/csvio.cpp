#include "itx/csvio.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "itx/errors.hpp"

namespace itx {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s, const std::string& where) {
  try {
    std::size_t used = 0;
    const double x = std::stod(s, &used);
    if (used != s.size()) throw DataError("trailing characters in number '" + s + "' in " + where);
    return x;
  } catch (const std::logic_error&) {
    throw DataError("cannot parse number '" + s + "' in " + where);
  }
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << content;
  if (!out) throw IoError("short write to " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string points_to_csv(const DiscreteMeasure& m, bool with_weights) {
  std::ostringstream out;
  for (int d = 0; d < m.dim(); ++d) out << (d ? ",x" : "x") << d;
  if (with_weights) out << ",weight";
  out << "\n";
  for (int i = 0; i < m.size(); ++i) {
    for (int d = 0; d < m.dim(); ++d) {
      if (d) out << ",";
      out << format_double(m.points[i][d]);
    }
    if (with_weights) out << "," << format_double(m.weights[i]);
    out << "\n";
  }
  return out.str();
}

DiscreteMeasure points_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw DataError("point csv: missing header");
  const std::vector<std::string> header = split(line, ',');
  if (header.empty()) throw DataError("point csv: empty header");
  const bool has_weight = header.back() == "weight";
  const int dim = static_cast<int>(header.size()) - (has_weight ? 1 : 0);
  if (dim < 1) throw DataError("point csv: no coordinate columns");

  std::vector<Point> points;
  std::vector<double> weights;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const std::vector<std::string> cells = split(line, ',');
    if (static_cast<int>(cells.size()) != dim + (has_weight ? 1 : 0))
      throw DataError("point csv: wrong column count on line " + std::to_string(lineno));
    Point p(dim);
    for (int d = 0; d < dim; ++d)
      p[d] = parse_double(cells[d], "line " + std::to_string(lineno));
    points.push_back(std::move(p));
    if (has_weight)
      weights.push_back(parse_double(cells[dim], "line " + std::to_string(lineno)));
  }
  if (points.empty()) throw EmptyInput("point csv has no rows");
  if (has_weight) return make_weighted(std::move(points), std::move(weights));
  return make_uniform(std::move(points), 1.0);
}

void save_points(const DiscreteMeasure& m, const std::string& path, bool with_weights) {
  write_text_file(path, points_to_csv(m, with_weights));
}

DiscreteMeasure load_points(const std::string& path) {
  return points_from_csv(read_text_file(path));
}

std::string coupling_to_csv(const Coupling& c) {
  std::ostringstream out;
  out << "i,j,mass\n";
  for (const CouplingEntry& e : c.entries)
    out << e.i << "," << e.j << "," << format_double(e.mass) << "\n";
  return out.str();
}

Coupling coupling_from_csv(const std::string& text, int rows, int cols) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || split(line, ',') != std::vector<std::string>{"i", "j", "mass"})
    throw DataError("coupling csv: expected header i,j,mass");
  Coupling c;
  c.row_marginals.assign(rows, 0.0);
  c.col_marginals.assign(cols, 0.0);
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const std::vector<std::string> cells = split(line, ',');
    if (cells.size() != 3)
      throw DataError("coupling csv: wrong column count on line " + std::to_string(lineno));
    CouplingEntry e;
    e.i = static_cast<int>(parse_double(cells[0], "coupling line " + std::to_string(lineno)));
    e.j = static_cast<int>(parse_double(cells[1], "coupling line " + std::to_string(lineno)));
    e.mass = parse_double(cells[2], "coupling line " + std::to_string(lineno));
    if (e.i < 0 || e.i >= rows || e.j < 0 || e.j >= cols)
      throw DataError("coupling csv: index out of range on line " + std::to_string(lineno));
    c.row_marginals[e.i] += e.mass;
    c.col_marginals[e.j] += e.mass;
    c.entries.push_back(e);
  }
  return c;
}

void save_coupling(const Coupling& c, const std::string& path) {
  write_text_file(path, coupling_to_csv(c));
}

Coupling load_coupling(const std::string& path, int rows, int cols) {
  return coupling_from_csv(read_text_file(path), rows, cols);
}

std::string dual_to_csv(const DualSolution& d) {
  std::ostringstream out;
  out << "side,index,value\n";
  for (std::size_t i = 0; i < d.u.size(); ++i)
    out << "u," << i << "," << format_double(d.u[i]) << "\n";
  for (std::size_t j = 0; j < d.v.size(); ++j)
    out << "v," << j << "," << format_double(d.v[j]) << "\n";
  return out.str();
}

void save_dual(const DualSolution& d, const std::string& path) {
  write_text_file(path, dual_to_csv(d));
}

}  // namespace itx
