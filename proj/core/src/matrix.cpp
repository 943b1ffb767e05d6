#include "toric/matrix.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>

namespace toric {

SparseIntMatrix::SparseIntMatrix(std::size_t rows, std::size_t cols, std::vector<Entry> entries)
    : rows_(rows), cols_(cols) {
  std::erase_if(entries, [](const Entry& e) { return e.value == 0; });
  for (const Entry& e : entries) {
    if (e.row >= rows || e.col >= cols)
      throw DimensionError("entry (" + std::to_string(e.row) + "," + std::to_string(e.col) +
                           ") outside a " + std::to_string(rows) + "x" + std::to_string(cols) +
                           " matrix");
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  for (std::size_t k = 1; k < entries.size(); ++k) {
    if (entries[k].row == entries[k - 1].row && entries[k].col == entries[k - 1].col)
      throw DimensionError("duplicate entry (" + std::to_string(entries[k].row) + "," +
                           std::to_string(entries[k].col) + ")");
  }
  entries_ = std::move(entries);
  row_start_.assign(rows_ + 1, 0);
  for (const Entry& e : entries_) ++row_start_[e.row + 1];
  for (std::size_t i = 0; i < rows_; ++i) row_start_[i + 1] += row_start_[i];
  for (const Entry& e : entries_) {
    Int a = e.value < 0 ? checked_sub(0, e.value) : e.value;
    max_abs_ = std::max(max_abs_, a);
  }
}

SparseIntMatrix SparseIntMatrix::from_dense(const std::vector<std::vector<Int>>& dense) {
  std::size_t cols = dense.empty() ? 0 : dense.front().size();
  return from_dense(dense.size(), cols, dense);
}

SparseIntMatrix SparseIntMatrix::from_dense(std::size_t rows, std::size_t cols,
                                            const std::vector<std::vector<Int>>& dense) {
  if (dense.size() != rows) throw DimensionError("dense matrix has the wrong number of rows");
  std::vector<Entry> entries;
  for (std::size_t i = 0; i < rows; ++i) {
    if (dense[i].size() != cols) throw DimensionError("ragged dense matrix");
    for (std::size_t j = 0; j < cols; ++j)
      if (dense[i][j] != 0) entries.push_back({i, j, dense[i][j]});
  }
  return SparseIntMatrix(rows, cols, std::move(entries));
}

std::span<const SparseIntMatrix::Entry> SparseIntMatrix::row(std::size_t i) const {
  if (i >= rows_) throw DimensionError("row index out of range");
  return std::span<const Entry>(entries_).subspan(row_start_[i], row_start_[i + 1] - row_start_[i]);
}

Int SparseIntMatrix::at(std::size_t i, std::size_t j) const {
  if (j >= cols_) throw DimensionError("column index out of range");
  for (const Entry& e : row(i))
    if (e.col == j) return e.value;
  return 0;
}

IntVector SparseIntMatrix::multiply(const IntVector& v) const {
  if (v.size() != cols_)
    throw DimensionError("vector of length " + std::to_string(v.size()) + " for a matrix with " +
                         std::to_string(cols_) + " columns");
  IntVector out(rows_, 0);
  for (const Entry& e : entries_) out[e.row] = checked_add(out[e.row], checked_mul(e.value, v[e.col]));
  return out;
}

SparseIntMatrix SparseIntMatrix::transpose() const {
  std::vector<Entry> t;
  t.reserve(entries_.size());
  for (const Entry& e : entries_) t.push_back({e.col, e.row, e.value});
  return SparseIntMatrix(cols_, rows_, std::move(t));
}

std::vector<std::vector<Int>> SparseIntMatrix::dense() const {
  std::vector<std::vector<Int>> d(rows_, std::vector<Int>(cols_, 0));
  for (const Entry& e : entries_) d[e.row][e.col] = e.value;
  return d;
}

std::vector<std::size_t> SparseIntMatrix::zero_rows() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < rows_; ++i)
    if (row_start_[i] == row_start_[i + 1]) out.push_back(i);
  return out;
}

namespace {

// Reads whitespace-separated tokens, tracking line numbers for diagnostics.
class TokenReader {
 public:
  explicit TokenReader(std::istream& in) : in_(in) {}

  bool next_line(std::vector<std::string>& tokens) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::istringstream ls(line);
      tokens.clear();
      for (std::string tok; ls >> tok;) tokens.push_back(tok);
      if (!tokens.empty()) return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("matrix line " + std::to_string(line_no_) + ": " + what);
  }

  Int integer(const std::string& tok) const {
    std::size_t pos = 0;
    Int v = 0;
    try {
      v = std::stoll(tok, &pos);
    } catch (const std::exception&) {
      fail("not an integer: '" + tok + "'");
    }
    if (pos != tok.size()) fail("not an integer: '" + tok + "'");
    return v;
  }

  std::size_t count(const std::string& tok) const {
    Int v = integer(tok);
    if (v < 0) fail("negative size: " + tok);
    return static_cast<std::size_t>(v);
  }

 private:
  std::istream& in_;
  std::size_t line_no_ = 0;
};

}  // namespace

ParsedMatrix parse_matrix(std::istream& in, const MatrixParseOptions& options) {
  TokenReader reader(in);
  std::vector<std::string> tok;
  if (!reader.next_line(tok)) throw ParseError("empty matrix input");

  std::size_t m = 0, n = 0;
  std::vector<SparseIntMatrix::Entry> entries;
  if (tok[0] == "sparse") {
    if (tok.size() != 4) reader.fail("expected 'sparse m n k'");
    m = reader.count(tok[1]);
    n = reader.count(tok[2]);
    std::size_t k = reader.count(tok[3]);
    for (std::size_t e = 0; e < k; ++e) {
      if (!reader.next_line(tok)) reader.fail("expected " + std::to_string(k) + " entries");
      if (tok.size() != 3) reader.fail("expected 'i j value'");
      entries.push_back({reader.count(tok[0]), reader.count(tok[1]), reader.integer(tok[2])});
    }
  } else {
    if (tok.size() != 2) reader.fail("expected 'm n' or 'sparse m n k'");
    m = reader.count(tok[0]);
    n = reader.count(tok[1]);
    for (std::size_t i = 0; i < m; ++i) {
      if (!reader.next_line(tok)) reader.fail("expected " + std::to_string(m) + " rows");
      if (tok.size() != n) reader.fail("expected " + std::to_string(n) + " entries in row");
      for (std::size_t j = 0; j < n; ++j) entries.push_back({i, j, reader.integer(tok[j])});
    }
  }
  if (reader.next_line(tok)) reader.fail("unexpected trailing content");

  ParsedMatrix out;
  try {
    out.matrix = SparseIntMatrix(m, n, std::move(entries));
  } catch (const DimensionError& e) {
    throw ParseError(e.what());
  }

  auto zero = out.matrix.zero_rows();
  if (!zero.empty()) {
    if (!options.drop_zero_rows)
      throw ParseError("row " + std::to_string(zero.front()) +
                       " is zero (pass the drop-zero-rows option to remove zero rows)");
    std::vector<std::size_t> new_index(m, 0);
    std::size_t kept = 0;
    for (std::size_t i = 0, z = 0; i < m; ++i) {
      if (z < zero.size() && zero[z] == i) {
        ++z;
        out.warnings.push_back("dropped zero row " + std::to_string(i));
        continue;
      }
      new_index[i] = kept++;
    }
    std::vector<SparseIntMatrix::Entry> kept_entries;
    for (const auto& e : out.matrix.entries()) kept_entries.push_back({new_index[e.row], e.col, e.value});
    out.matrix = SparseIntMatrix(kept, n, std::move(kept_entries));
  }
  return out;
}

ParsedMatrix parse_matrix(const std::string& text, const MatrixParseOptions& options) {
  std::istringstream in(text);
  return parse_matrix(in, options);
}

ParsedMatrix read_matrix_file(const std::string& path, const MatrixParseOptions& options) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open matrix file '" + path + "'");
  return parse_matrix(in, options);
}

std::string format_matrix(const SparseIntMatrix& a) {
  std::string out = std::to_string(a.rows()) + " " + std::to_string(a.cols()) + "\n";
  for (const auto& row : a.dense()) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out += ' ';
      out += std::to_string(row[j]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace toric
