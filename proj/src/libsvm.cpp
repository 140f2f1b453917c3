#include "gsreg/libsvm.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace gsreg {

namespace {

struct RawRow {
  double label = 0.0;
  std::vector<std::pair<int, double>> entries;
};

double parse_double_token(const std::string& tok, int line, const char* what) {
  // std::from_chars<double> rejects leading '+', so route through strtod.
  const char* begin = tok.c_str();
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  if (end != begin + tok.size() || tok.empty())
    throw LibsvmParseError(line, std::string("malformed ") + what + " '" + tok + "'");
  return value;
}

}  // namespace

std::pair<Mat, Vec> parse_libsvm(std::istream& in, int declared_p) {
  std::vector<RawRow> rows;
  std::string line;
  int line_no = 0;
  int max_index = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream tokens(line);
    std::string tok;
    if (!(tokens >> tok)) continue;  // blank line
    RawRow row;
    row.label = parse_double_token(tok, line_no, "label");
    int prev_index = 0;
    while (tokens >> tok) {
      const auto colon = tok.find(':');
      if (colon == std::string::npos || colon == 0 || colon + 1 == tok.size())
        throw LibsvmParseError(line_no, "malformed feature '" + tok + "'");
      const std::string idx_str = tok.substr(0, colon);
      int index = 0;
      const auto [ptr, ec] =
          std::from_chars(idx_str.data(), idx_str.data() + idx_str.size(), index);
      if (ec != std::errc() || ptr != idx_str.data() + idx_str.size() || index < 1)
        throw LibsvmParseError(line_no, "malformed index '" + idx_str + "'");
      if (index <= prev_index)
        throw LibsvmParseError(line_no, "indices not strictly ascending at '" + tok + "'");
      if (declared_p > 0 && index > declared_p)
        throw LibsvmParseError(line_no, "index " + std::to_string(index) +
                                            " exceeds declared p " +
                                            std::to_string(declared_p));
      const double value = parse_double_token(tok.substr(colon + 1), line_no, "value");
      row.entries.emplace_back(index, value);
      prev_index = index;
      max_index = std::max(max_index, index);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw LibsvmParseError(line_no, "empty file");
  const int p = declared_p > 0 ? declared_p : max_index;
  if (p < 1) throw LibsvmParseError(line_no, "no feature indices seen");

  Mat A = Mat::Zero(static_cast<int>(rows.size()), p);
  Vec b(static_cast<int>(rows.size()));
  for (size_t i = 0; i < rows.size(); ++i) {
    b[static_cast<int>(i)] = rows[i].label;
    for (const auto& [idx, val] : rows[i].entries) A(static_cast<int>(i), idx - 1) = val;
  }
  return {std::move(A), std::move(b)};
}

namespace {

void format_shortest(double value, std::ostream& out) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  out.write(buf, ptr - buf);
  (void)ec;
}

}  // namespace

void write_libsvm(const Mat& A, const Vec& b, std::ostream& out) {
  for (int i = 0; i < A.rows(); ++i) {
    format_shortest(b[i], out);
    for (int j = 0; j < A.cols(); ++j) {
      if (A(i, j) == 0.0) continue;
      out << ' ' << (j + 1) << ':';
      format_shortest(A(i, j), out);
    }
    out << '\n';
  }
}

ProblemData load_libsvm_file(const std::string& path, int m,
                             const std::vector<int>& group_sizes, int q, double mu) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  auto [A, b] = parse_libsvm(in);
  ProblemData data;
  data.A = std::move(A);
  data.b = std::move(b);
  data.q = q;
  data.mu = mu;
  if (!group_sizes.empty()) {
    data.groups = GroupStructure::from_sizes(group_sizes);
    if (data.groups.p() != data.p())
      throw std::runtime_error("group sizes sum to " + std::to_string(data.groups.p()) +
                               " but the file has p = " + std::to_string(data.p()));
  } else {
    const int groups_m = m > 0 ? m : (data.p() + 9) / 10;
    data.groups = GroupStructure::contiguous(data.p(), groups_m);
  }
  data.validate();
  return data;
}

}  // namespace gsreg
