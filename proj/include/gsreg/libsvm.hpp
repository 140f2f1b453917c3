#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "gsreg/problem.hpp"

namespace gsreg {

// Parse failure carrying the 1-based line number of the offending line.
class LibsvmParseError : public std::runtime_error {
 public:
  LibsvmParseError(int line, const std::string& what_arg)
      : std::runtime_error("libsvm parse error at line " + std::to_string(line) + ": " +
                           what_arg),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// LIBSVM text format: one row per line, "label idx:val idx:val ...", indices
// 1-based and strictly ascending. Absent entries are zero. p is the largest
// index seen unless declared_p > 0 pins it (indices beyond it are rejected).
// Blank lines are skipped.
std::pair<Mat, Vec> parse_libsvm(std::istream& in, int declared_p = 0);

// One line per row; exact zeros omitted; values in shortest round-trip decimal.
void write_libsvm(const Mat& A, const Vec& b, std::ostream& out);

ProblemData load_libsvm_file(const std::string& path, int m,
                             const std::vector<int>& group_sizes, int q, double mu);

}  // namespace gsreg
