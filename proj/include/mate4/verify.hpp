#pragma once

#include <optional>
#include <string>
#include <vector>

namespace mate4 {

struct CheckResult {
  enum class Kind { at_most, greater, in_range };

  int criterion = 0;
  std::string name;
  std::vector<std::string> tags;
  Kind kind = Kind::at_most;
  double value = 0.0;
  double lo = 0.0;  // threshold for at_most/greater, lower end for in_range
  double hi = 0.0;
  bool pass = false;
  std::string note;
};

struct VerifyOptions {
  std::optional<double> tol;  // replaces the threshold of every at_most check
  std::string only;           // run checks carrying this tag (criterion ids are "c1".."c8")
  unsigned long long seed = 20240611;  // random frames of criterion 4
};

std::vector<CheckResult> run_verification(const VerifyOptions& opts = {});

// Names of the tags accepted by VerifyOptions::only.
std::vector<std::string> verification_tags();

std::string describe(const CheckResult& r);

}  // namespace mate4
