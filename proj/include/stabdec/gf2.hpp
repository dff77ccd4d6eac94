#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "stabdec/errors.hpp"

namespace stabdec {

/// Dense matrix over GF(2), row-major, 0-based indices.
class Gf2Matrix {
 public:
  Gf2Matrix(int rows, int cols)
      : rows_(checked_dim(rows)), cols_(checked_dim(cols)),
        data_(static_cast<std::size_t>(rows) * cols, 0) {}

  static Gf2Matrix identity(int n) {
    Gf2Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  std::uint8_t at(int r, int c) const { return data_[index(r, c)]; }
  void set(int r, int c, std::uint8_t v) { data_[index(r, c)] = v & 1; }

  void xor_row(int dst, int src) {
    for (int c = 0; c < cols_; ++c) data_[index(dst, c)] ^= data_[index(src, c)];
  }

  void swap_rows(int a, int b) {
    for (int c = 0; c < cols_; ++c) std::swap(data_[index(a, c)], data_[index(b, c)]);
  }

  std::vector<std::uint8_t> row(int r) const {
    std::vector<std::uint8_t> out(cols_);
    for (int c = 0; c < cols_; ++c) out[c] = at(r, c);
    return out;
  }

  bool operator==(const Gf2Matrix&) const = default;

 private:
  static int checked_dim(int d) {
    if (d < 0) throw PreconditionError("negative matrix shape");
    return d;
  }

  std::size_t index(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) {
      throw PreconditionError("matrix index out of range");
    }
    return static_cast<std::size_t>(r) * cols_ + c;
  }

  int rows_, cols_;
  std::vector<std::uint8_t> data_;
};

inline int gf2_rank(Gf2Matrix m) {
  int rank = 0;
  for (int c = 0; c < m.cols() && rank < m.rows(); ++c) {
    int pivot = -1;
    for (int r = rank; r < m.rows(); ++r) {
      if (m.at(r, c)) { pivot = r; break; }
    }
    if (pivot < 0) continue;
    m.swap_rows(rank, pivot);
    for (int r = 0; r < m.rows(); ++r) {
      if (r != rank && m.at(r, c)) m.xor_row(r, rank);
    }
    ++rank;
  }
  return rank;
}

inline Gf2Matrix gf2_mul(const Gf2Matrix& a, const Gf2Matrix& b) {
  if (a.cols() != b.rows()) throw PreconditionError("matrix shape mismatch");
  Gf2Matrix out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      if (!a.at(i, k)) continue;
      for (int j = 0; j < b.cols(); ++j) {
        if (b.at(k, j)) out.set(i, j, out.at(i, j) ^ 1);
      }
    }
  }
  return out;
}

inline std::vector<std::uint8_t> gf2_mat_vec(const Gf2Matrix& m,
                                             const std::vector<std::uint8_t>& v) {
  if (static_cast<int>(v.size()) != m.cols()) {
    throw PreconditionError("matrix/vector shape mismatch");
  }
  std::vector<std::uint8_t> out(m.rows(), 0);
  for (int r = 0; r < m.rows(); ++r) {
    std::uint8_t acc = 0;
    for (int c = 0; c < m.cols(); ++c) acc ^= m.at(r, c) & v[c];
    out[r] = acc;
  }
  return out;
}

inline std::optional<Gf2Matrix> gf2_inverse(const Gf2Matrix& m) {
  if (m.rows() != m.cols()) throw PreconditionError("inverse needs a square matrix");
  int n = m.rows();
  Gf2Matrix work = m;
  Gf2Matrix inv = Gf2Matrix::identity(n);
  for (int c = 0; c < n; ++c) {
    int pivot = -1;
    for (int r = c; r < n; ++r) {
      if (work.at(r, c)) { pivot = r; break; }
    }
    if (pivot < 0) return std::nullopt;
    work.swap_rows(c, pivot);
    inv.swap_rows(c, pivot);
    for (int r = 0; r < n; ++r) {
      if (r != c && work.at(r, c)) {
        work.xor_row(r, c);
        inv.xor_row(r, c);
      }
    }
  }
  return inv;
}

/// Expresses `target` as a XOR of rows of `basis`, if possible. Returns
/// the 0-based row indices of one such combination (empty for target 0).
inline std::optional<std::vector<int>> gf2_express_in_rows(
    const Gf2Matrix& basis, const std::vector<std::uint8_t>& target) {
  if (static_cast<int>(target.size()) != basis.cols()) {
    throw PreconditionError("matrix/vector shape mismatch");
  }
  int rows = basis.rows(), cols = basis.cols();
  // Augment each row with indicator bits tracking which originals it sums.
  Gf2Matrix work(rows, cols + rows);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) work.set(r, c, basis.at(r, c));
    work.set(r, cols + r, 1);
  }
  std::vector<std::uint8_t> t = target;
  std::vector<std::uint8_t> combo(rows, 0);
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r) {
      if (work.at(r, c)) { pivot = r; break; }
    }
    if (pivot < 0) continue;
    work.swap_rows(rank, pivot);
    for (int r = 0; r < rows; ++r) {
      if (r != rank && work.at(r, c)) work.xor_row(r, rank);
    }
    if (t[c]) {
      for (int j = 0; j < cols; ++j) t[j] ^= work.at(rank, j);
      for (int j = 0; j < rows; ++j) combo[j] ^= work.at(rank, cols + j);
    }
    ++rank;
  }
  for (int c = 0; c < cols; ++c) {
    if (t[c]) return std::nullopt;
  }
  std::vector<int> out;
  for (int r = 0; r < rows; ++r) {
    if (combo[r]) out.push_back(r);
  }
  return out;
}

}  // namespace stabdec
