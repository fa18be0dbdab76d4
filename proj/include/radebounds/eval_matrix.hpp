#ifndef RADEBOUNDS_EVAL_MATRIX_HPP
#define RADEBOUNDS_EVAL_MATRIX_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace rade {

/// Function class evaluated on a sample: an m x K grid where row i holds the
/// values f_k(s_i) of every function on sample point s_i, together with the
/// declared range [a, b] of the class (b > 0 >= a). The grid is the only
/// access the library has to the class; a constant-zero column is appended
/// when the input lacks one, so suprema over the class are never negative.
class EvalMatrix {
 public:
  EvalMatrix(std::vector<double> values, std::size_t rows, std::size_t cols,
             double a, double b,
             std::vector<std::string> column_names = {});

  std::size_t rows() const noexcept { return rows_; }  // m
  std::size_t cols() const noexcept { return cols_; }  // K, after f0 insertion
  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double c() const noexcept { return b_ - a_; }
  double z() const noexcept { return z_; }  // max{|a|, |b|}

  double operator()(std::size_t row, std::size_t col) const {
    return values_[row * cols_ + col];
  }

  const std::vector<double>& values() const noexcept { return values_; }
  const std::vector<std::string>& column_names() const noexcept { return names_; }
  bool zero_column_added() const noexcept { return zero_column_added_; }

  /// Matrix restricted to the given rows (with repetition), keeping the range.
  EvalMatrix select_rows(const std::vector<std::size_t>& row_indices) const;

  /// Matrix with every entry negated and the range flipped to [-b, -a].
  EvalMatrix negated() const;

 private:
  std::vector<double> values_;  // row-major
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  double a_ = 0.0;
  double b_ = 0.0;
  double z_ = 0.0;
  bool zero_column_added_ = false;
  std::vector<std::string> names_;
};

/// n x m matrix of +/-1 assignments. Seeded matrices are counter-based:
/// entry (j, i) depends only on (seed, j, i), so any submatrix is
/// reproducible independent of traversal order.
class SignMatrix {
 public:
  SignMatrix(std::size_t n, std::size_t m, std::uint64_t seed);
  static SignMatrix from_values(std::vector<std::int8_t> signs, std::size_t n, std::size_t m);

  std::size_t n() const noexcept { return n_; }
  std::size_t m() const noexcept { return m_; }
  int sign(std::size_t row, std::size_t col) const {
    return signs_[row * m_ + col];
  }
  std::optional<std::uint64_t> seed() const noexcept { return seed_; }

 private:
  SignMatrix() = default;
  std::vector<std::int8_t> signs_;
  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::optional<std::uint64_t> seed_;
};

/// Parse the CSV evaluation-matrix format: a `#range,a,b` first line, an
/// optional header row of function names, then one comma-separated sample
/// row per line. Errors carry line/column coordinates.
EvalMatrix load_eval_csv(std::istream& in);
EvalMatrix load_eval_csv(const std::filesystem::path& path);

}  // namespace rade

#endif
