#pragma once

#include <span>
#include <string>
#include <vector>

#include "mate4/framed.hpp"

namespace mate4 {

struct CurveTable {
  std::vector<double> t;
  std::vector<Vec4> x;
};

struct CurvatureTable {
  std::vector<double> t;
  std::vector<FramedCurvature> k;
};

// Header t,x1,x2,x3,x4
CurveTable read_curve_csv(const std::string& path);
void write_curve_csv(const std::string& path, const CurveTable& table);

// Header t,x1..x4,n11..n14,n21..n24,n31..n34; mu is recomputed on read.
std::vector<FramedNode> read_framed_csv(const std::string& path);
void write_framed_csv(const std::string& path, std::span<const FramedNode> nodes);

// Header t,l1,l2,l3,l4,l5,l6,alpha
CurvatureTable read_curvature_csv(const std::string& path);
void write_curvature_csv(const std::string& path, const CurvatureTable& table);

// Uniform spacing of a parameter column; throws GridMismatch otherwise.
double uniform_spacing(const std::vector<double>& t);

// 17 significant digits, enough to round-trip a double.
std::string format_double(double v);

}  // namespace mate4
