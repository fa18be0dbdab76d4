#include "radebounds/eval_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

#include "radebounds/errors.hpp"
#include "radebounds/rng.hpp"

namespace rade {

namespace {

std::string shape_str(std::size_t rows, std::size_t cols) {
  return std::to_string(rows) + "x" + std::to_string(cols);
}

}  // namespace

EvalMatrix::EvalMatrix(std::vector<double> values, std::size_t rows, std::size_t cols,
                       double a, double b, std::vector<std::string> column_names)
    : values_(std::move(values)), rows_(rows), cols_(cols), a_(a), b_(b),
      names_(std::move(column_names)) {
  if (rows_ < 1 || cols_ < 1) {
    throw_invalid("evaluation matrix must have at least one row and one column, got " +
                  shape_str(rows_, cols_));
  }
  if (values_.size() != rows_ * cols_) {
    throw_invalid("evaluation matrix storage has " + std::to_string(values_.size()) +
                  " entries, expected " + std::to_string(rows_ * cols_));
  }
  if (!(b_ > 0.0) || !(a_ <= 0.0)) {
    throw_invalid("range must satisfy b > 0 >= a, got [" + std::to_string(a_) + ", " +
                  std::to_string(b_) + "]");
  }
  if (!names_.empty() && names_.size() != cols_) {
    throw_invalid("column name count " + std::to_string(names_.size()) +
                  " does not match column count " + std::to_string(cols_));
  }
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      double v = values_[i * cols_ + k];
      if (!std::isfinite(v) || v < a_ || v > b_) {
        throw_invalid("entry at row " + std::to_string(i) + ", column " + std::to_string(k) +
                      " is " + std::to_string(v) + ", outside the declared range [" +
                      std::to_string(a_) + ", " + std::to_string(b_) + "]");
      }
    }
  }

  bool has_zero_column = false;
  for (std::size_t k = 0; k < cols_ && !has_zero_column; ++k) {
    bool all_zero = true;
    for (std::size_t i = 0; i < rows_ && all_zero; ++i) {
      all_zero = values_[i * cols_ + k] == 0.0;
    }
    has_zero_column = all_zero;
  }
  if (!has_zero_column) {
    std::vector<double> extended(rows_ * (cols_ + 1), 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
      std::copy_n(values_.begin() + static_cast<std::ptrdiff_t>(i * cols_), cols_,
                  extended.begin() + static_cast<std::ptrdiff_t>(i * (cols_ + 1)));
    }
    values_ = std::move(extended);
    ++cols_;
    zero_column_added_ = true;
    if (!names_.empty()) names_.emplace_back("zero");
  }

  z_ = std::max(std::abs(a_), std::abs(b_));
}

EvalMatrix EvalMatrix::select_rows(const std::vector<std::size_t>& row_indices) const {
  std::vector<double> out;
  out.reserve(row_indices.size() * cols_);
  for (std::size_t r : row_indices) {
    if (r >= rows_) {
      throw_invalid("row index " + std::to_string(r) + " out of range for " +
                    shape_str(rows_, cols_) + " matrix");
    }
    out.insert(out.end(), values_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
               values_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
  }
  return EvalMatrix(std::move(out), row_indices.size(), cols_, a_, b_);
}

EvalMatrix EvalMatrix::negated() const {
  std::vector<double> out(values_.size());
  // -0.0 entries would defeat the exact zero-column detection
  std::transform(values_.begin(), values_.end(), out.begin(),
                 [](double v) { return v == 0.0 ? 0.0 : -v; });
  return EvalMatrix(std::move(out), rows_, cols_, -b_, -a_);
}

SignMatrix::SignMatrix(std::size_t n, std::size_t m, std::uint64_t seed)
    : n_(n), m_(m), seed_(seed) {
  if (n_ < 1 || m_ < 1) {
    throw_invalid("sign matrix must have at least one row and one column, got " +
                  shape_str(n_, m_));
  }
  signs_.resize(n_ * m_);
  for (std::size_t j = 0; j < n_; ++j) {
    for (std::size_t i = 0; i < m_; ++i) {
      signs_[j * m_ + i] = static_cast<std::int8_t>(rademacher_sign(seed, j, i));
    }
  }
}

SignMatrix SignMatrix::from_values(std::vector<std::int8_t> signs, std::size_t n, std::size_t m) {
  if (n < 1 || m < 1) {
    throw_invalid("sign matrix must have at least one row and one column, got " +
                  shape_str(n, m));
  }
  if (signs.size() != n * m) {
    throw_invalid("sign matrix storage has " + std::to_string(signs.size()) +
                  " entries, expected " + std::to_string(n * m));
  }
  for (std::size_t idx = 0; idx < signs.size(); ++idx) {
    if (signs[idx] != 1 && signs[idx] != -1) {
      throw_invalid("sign matrix entry at row " + std::to_string(idx / m) + ", column " +
                    std::to_string(idx % m) + " must be +1 or -1");
    }
  }
  SignMatrix out;
  out.signs_ = std::move(signs);
  out.n_ = n;
  out.m_ = m;
  return out;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  fields.push_back(cur);
  for (auto& f : fields) {
    std::size_t first = f.find_first_not_of(" \t");
    std::size_t last = f.find_last_not_of(" \t");
    f = first == std::string::npos ? std::string() : f.substr(first, last - first + 1);
  }
  return fields;
}

bool parse_double(const std::string& text, double& out) {
  if (text.empty()) return false;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

EvalMatrix load_eval_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;

  // required range header
  double a = 0.0, b = 0.0;
  bool have_range = false;
  while (std::getline(in, line)) {
    ++line_no;
    auto fields = split_csv_line(line);
    if (fields.size() == 1 && fields[0].empty()) continue;  // blank line
    if (fields[0] != "#range") {
      throw_parse("line " + std::to_string(line_no) +
                  ": expected a `#range,a,b` header line before any data");
    }
    if (fields.size() != 3 || !parse_double(fields[1], a) || !parse_double(fields[2], b)) {
      throw_parse("line " + std::to_string(line_no) +
                  ": malformed `#range` line, expected `#range,a,b` with numeric a and b");
    }
    have_range = true;
    break;
  }
  if (!have_range) {
    throw_parse("missing `#range,a,b` header line");
  }

  std::vector<std::string> names;
  std::vector<double> values;
  std::size_t cols = 0;
  std::size_t rows = 0;
  bool saw_first_content = false;

  while (std::getline(in, line)) {
    ++line_no;
    auto fields = split_csv_line(line);
    if (fields.size() == 1 && fields[0].empty()) continue;
    if (!fields.empty() && !fields[0].empty() && fields[0][0] == '#') continue;  // comment

    if (!saw_first_content) {
      saw_first_content = true;
      double probe;
      if (!parse_double(fields[0], probe)) {  // optional name header
        names = fields;
        cols = fields.size();
        continue;
      }
    }

    if (cols == 0) cols = fields.size();
    if (fields.size() != cols) {
      throw_parse("line " + std::to_string(line_no) + ": row has " +
                  std::to_string(fields.size()) + " fields, expected " + std::to_string(cols));
    }
    for (std::size_t k = 0; k < fields.size(); ++k) {
      double v;
      if (!parse_double(fields[k], v)) {
        throw_parse("line " + std::to_string(line_no) + ", column " + std::to_string(k + 1) +
                    ": `" + fields[k] + "` is not a number");
      }
      values.push_back(v);
    }
    ++rows;
  }

  if (rows == 0) {
    throw_parse("no sample rows found after the `#range` header");
  }
  try {
    return EvalMatrix(std::move(values), rows, cols, a, b, std::move(names));
  } catch (const error& e) {
    if (e.code() == errc::invalid_argument) throw_parse(e.what());
    throw;
  }
}

EvalMatrix load_eval_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw_parse("cannot open file: " + path.string());
  }
  return load_eval_csv(in);
}

}  // namespace rade
