#include "mate4/csv_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mate4/error.hpp"

namespace mate4 {

namespace {

const char* kCurveHeader = "t,x1,x2,x3,x4";
const char* kFramedHeader = "t,x1,x2,x3,x4,n11,n12,n13,n14,n21,n22,n23,n24,n31,n32,n33,n34";
const char* kCurvatureHeader = "t,l1,l2,l3,l4,l5,l6,alpha";

std::string trim(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  return s.substr(i);
}

std::string strip_spaces(const std::string& s) {
  std::string o;
  for (char c : s) {
    if (c != ' ' && c != '\t' && c != '\r') o.push_back(c);
  }
  return o;
}

std::vector<std::vector<double>> read_rows(const std::string& path, const char* header, std::size_t cols) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::InvalidInput, path + ": empty file");
  if (strip_spaces(line) != header) {
    throw Error(ErrorCode::InvalidInput, path + ": expected header '" + header + "'");
  }
  std::vector<std::vector<double>> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        const std::string c = trim(cell);
        const double v = std::stod(c, &used);
        if (used != c.size() || !std::isfinite(v)) throw std::invalid_argument("bad");
        row.push_back(v);
      } catch (const std::exception&) {
        throw Error(ErrorCode::InvalidInput, path + ":" + std::to_string(lineno) + ": bad number '" + cell + "'");
      }
    }
    if (row.size() != cols) {
      throw Error(ErrorCode::InvalidInput, path + ":" + std::to_string(lineno) + ": expected " +
                                               std::to_string(cols) + " columns");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path);
}

void put(std::ostream& o, double v) { o << ',' << format_double(v); }

}  // namespace

std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // drop negative zero
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double uniform_spacing(const std::vector<double>& t) {
  if (t.size() < 2) throw Error(ErrorCode::InsufficientSamples, "need at least 2 rows");
  const double h = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
  if (!(h > 0.0)) throw Error(ErrorCode::GridMismatch, "parameter column must increase");
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (std::abs(t[i] - (t.front() + h * static_cast<double>(i))) > 1e-6 * h) {
      throw Error(ErrorCode::GridMismatch, "parameter column is not uniformly spaced");
    }
  }
  return h;
}

CurveTable read_curve_csv(const std::string& path) {
  CurveTable tab;
  for (const auto& r : read_rows(path, kCurveHeader, 5)) {
    tab.t.push_back(r[0]);
    tab.x.push_back({r[1], r[2], r[3], r[4]});
  }
  return tab;
}

void write_curve_csv(const std::string& path, const CurveTable& table) {
  auto out = open_out(path);
  out << kCurveHeader << '\n';
  for (std::size_t i = 0; i < table.t.size(); ++i) {
    out << format_double(table.t[i]);
    for (double v : table.x[i].x) put(out, v);
    out << '\n';
  }
  finish(out, path);
}

std::vector<FramedNode> read_framed_csv(const std::string& path) {
  std::vector<FramedNode> nodes;
  for (const auto& r : read_rows(path, kFramedHeader, 17)) {
    const Vec4 n1{r[5], r[6], r[7], r[8]};
    const Vec4 n2{r[9], r[10], r[11], r[12]};
    const Vec4 n3{r[13], r[14], r[15], r[16]};
    nodes.push_back({r[0], {r[1], r[2], r[3], r[4]}, MovingFrame::from_vectors(n1, n2, n3)});
  }
  return nodes;
}

void write_framed_csv(const std::string& path, std::span<const FramedNode> nodes) {
  auto out = open_out(path);
  out << kFramedHeader << '\n';
  for (const auto& n : nodes) {
    out << format_double(n.t);
    for (double v : n.gamma.x) put(out, v);
    for (int k = 1; k <= 3; ++k) {
      for (double v : n.frame.nu(k).x) put(out, v);
    }
    out << '\n';
  }
  finish(out, path);
}

CurvatureTable read_curvature_csv(const std::string& path) {
  CurvatureTable tab;
  for (const auto& r : read_rows(path, kCurvatureHeader, 8)) {
    tab.t.push_back(r[0]);
    tab.k.push_back({r[1], r[2], r[3], r[4], r[5], r[6], r[7]});
  }
  return tab;
}

void write_curvature_csv(const std::string& path, const CurvatureTable& table) {
  auto out = open_out(path);
  out << kCurvatureHeader << '\n';
  for (std::size_t i = 0; i < table.t.size(); ++i) {
    out << format_double(table.t[i]);
    for (double v : table.k[i].values()) put(out, v);
    out << '\n';
  }
  finish(out, path);
}

}  // namespace mate4
