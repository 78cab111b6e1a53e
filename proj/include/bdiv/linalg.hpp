#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

#include "bdiv/errors.hpp"
#include "bdiv/rational.hpp"

namespace bdiv {

using Vec = std::vector<Rat>;

struct Mat {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Rat> data;

  Mat() = default;
  Mat(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, Rat(0)) {}

  Rat& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  const Rat& at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  bool operator==(const Mat& other) const {
    return rows == other.rows && cols == other.cols && data == other.data;
  }
};

inline Vec mat_vec(const Mat& m, const Vec& v) {
  Vec out(m.rows, Rat(0));
  for (std::size_t r = 0; r < m.rows; ++r)
    for (std::size_t c = 0; c < m.cols; ++c)
      if (v[c] != 0 && m.at(r, c) != 0) out[r] += m.at(r, c) * v[c];
  return out;
}

inline Mat mat_mul(const Mat& a, const Mat& b) {
  Mat out(a.rows, b.cols);
  for (std::size_t r = 0; r < a.rows; ++r)
    for (std::size_t k = 0; k < a.cols; ++k)
      if (a.at(r, k) != 0)
        for (std::size_t c = 0; c < b.cols; ++c)
          if (b.at(k, c) != 0) out.at(r, c) += a.at(r, k) * b.at(k, c);
  return out;
}

inline Vec vec_add(const Vec& a, const Vec& b) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

inline Vec vec_sub(const Vec& a, const Vec& b) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

inline Vec vec_scale(const Rat& s, const Vec& a) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = s * a[i];
  return out;
}

inline bool vec_is_zero(const Vec& a) {
  for (const auto& x : a)
    if (x != 0) return false;
  return true;
}

/// Solves A x = b by Gaussian elimination with exact pivoting.
/// Returns nullopt when A is singular.
inline std::optional<Vec> solve_linear(Mat a, Vec b) {
  const std::size_t n = a.rows;
  if (a.cols != n || b.size() != n) fail(ErrorKind::Internal, "solve_linear shape mismatch");
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a.at(pivot, col) == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a.at(pivot, c), a.at(col, c));
      std::swap(b[pivot], b[col]);
    }
    const Rat inv = Rat(1) / a.at(col, col);
    for (std::size_t c = col; c < n; ++c) a.at(col, c) *= inv;
    b[col] *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a.at(r, col) == 0) continue;
      const Rat f = a.at(r, col);
      for (std::size_t c = col; c < n; ++c) a.at(r, c) -= f * a.at(col, c);
      b[r] -= f * b[col];
    }
  }
  return b;
}

inline std::size_t matrix_rank(Mat a) {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < a.cols && rank < a.rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < a.rows && a.at(pivot, col) == 0) ++pivot;
    if (pivot == a.rows) continue;
    if (pivot != rank)
      for (std::size_t c = 0; c < a.cols; ++c) std::swap(a.at(pivot, c), a.at(rank, c));
    for (std::size_t r = 0; r < a.rows; ++r) {
      if (r == rank || a.at(r, col) == 0) continue;
      const Rat f = a.at(r, col) / a.at(rank, col);
      for (std::size_t c = col; c < a.cols; ++c) a.at(r, c) -= f * a.at(rank, c);
    }
    ++rank;
  }
  return rank;
}

/// Symmetric input. True iff all LDL^T pivots are strictly negative.
inline bool is_negative_definite(Mat g) {
  const std::size_t n = g.rows;
  for (std::size_t k = 0; k < n; ++k) {
    if (g.at(k, k) >= 0) return false;
    for (std::size_t r = k + 1; r < n; ++r) {
      const Rat f = g.at(r, k) / g.at(k, k);
      for (std::size_t c = k; c < n; ++c) g.at(r, c) -= f * g.at(k, c);
    }
  }
  return true;
}

}  // namespace bdiv
