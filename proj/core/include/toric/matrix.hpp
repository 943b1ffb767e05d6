#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "toric/integer.hpp"

namespace toric {

// Integer matrix in coordinate-list form with a row-major index.
// Stored values are nonzero and (row, col) pairs are unique.
class SparseIntMatrix {
 public:
  struct Entry {
    std::size_t row = 0;
    std::size_t col = 0;
    Int value = 0;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  SparseIntMatrix() = default;
  // Zero-valued entries are dropped; duplicates and out-of-range indices throw.
  SparseIntMatrix(std::size_t rows, std::size_t cols, std::vector<Entry> entries);

  static SparseIntMatrix from_dense(const std::vector<std::vector<Int>>& dense);
  // Dense input with an explicit shape, so 0 x n and m x 0 are expressible.
  static SparseIntMatrix from_dense(std::size_t rows, std::size_t cols,
                                    const std::vector<std::vector<Int>>& dense);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nonzeros() const { return entries_.size(); }
  // a = max |A_ij|, 0 for the empty matrix.
  Int max_abs() const { return max_abs_; }

  std::span<const Entry> entries() const { return entries_; }
  std::span<const Entry> row(std::size_t i) const;
  Int at(std::size_t i, std::size_t j) const;

  // A·v with overflow checks.
  IntVector multiply(const IntVector& v) const;
  SparseIntMatrix transpose() const;
  std::vector<std::vector<Int>> dense() const;
  std::vector<std::size_t> zero_rows() const;

  friend bool operator==(const SparseIntMatrix&, const SparseIntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Entry> entries_;          // sorted by (row, col)
  std::vector<std::size_t> row_start_;  // size rows_ + 1
  Int max_abs_ = 0;
};

struct MatrixParseOptions {
  // Zero rows are rejected unless this is set; dropped rows are reported in
  // `warnings`.
  bool drop_zero_rows = false;
};

struct ParsedMatrix {
  SparseIntMatrix matrix;
  std::vector<std::string> warnings;
};

// Text format, dense:   "m n" then m lines of n integers.
//              sparse:  "sparse m n k" then k lines "i j value" (0-based).
ParsedMatrix parse_matrix(std::istream& in, const MatrixParseOptions& options = {});
ParsedMatrix parse_matrix(const std::string& text, const MatrixParseOptions& options = {});
ParsedMatrix read_matrix_file(const std::string& path, const MatrixParseOptions& options = {});

// Dense text rendering, the exact inverse of the dense input format.
std::string format_matrix(const SparseIntMatrix& a);

}  // namespace toric
