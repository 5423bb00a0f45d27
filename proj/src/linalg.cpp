#include "joindeg/linalg.hpp"

namespace joindeg {

int rref(Mat& m) {
  if (m.empty()) return 0;
  const size_t rows = m.size(), cols = m[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && m[piv][c].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(m[r], m[piv]);
    Fq inv = m[r][c].inv();
    for (size_t j = c; j < cols; ++j) m[r][j] = m[r][j] * inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      Fq f = m[i][c];
      for (size_t j = c; j < cols; ++j) m[i][j] = m[i][j] - f * m[r][j];
    }
    ++r;
  }
  return static_cast<int>(r);
}

int rank_of(Mat m) { return rref(m); }

Mat row_space(Mat m) {
  int r = rref(m);
  m.resize(static_cast<size_t>(r));
  return m;
}

Mat null_space(const Mat& m) {
  if (m.empty()) return {};
  const size_t cols = m[0].size();
  const FieldSpec spec = m[0][0].spec();
  Mat a = m;
  rref(a);
  // locate pivot columns
  std::vector<int> pivot_col_of_row;
  std::vector<bool> is_pivot(cols, false);
  size_t row = 0;
  for (size_t c = 0; c < cols && row < a.size(); ++c) {
    if (!a[row][c].is_zero()) {
      pivot_col_of_row.push_back(static_cast<int>(c));
      is_pivot[c] = true;
      ++row;
    }
  }
  Mat basis;
  for (size_t fc = 0; fc < cols; ++fc) {
    if (is_pivot[fc]) continue;
    Vec v(cols, Fq::zero(spec));
    v[fc] = Fq::one(spec);
    for (size_t i = 0; i < pivot_col_of_row.size(); ++i)
      v[static_cast<size_t>(pivot_col_of_row[i])] = -a[i][fc];
    basis.push_back(std::move(v));
  }
  return basis;
}

Fq determinant(Mat m) {
  const size_t n = m.size();
  if (n == 0) fail(Err::SingularMatrix, "determinant of empty matrix");
  const FieldSpec spec = m[0][0].spec();
  Fq sign = Fq::one(spec);
  Fq prev = Fq::one(spec);
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      size_t piv = k + 1;
      while (piv < n && m[piv][k].is_zero()) ++piv;
      if (piv == n) return Fq::zero(spec);
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        // Bareiss step: exact division by the previous pivot
        m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev;
      }
      m[i][k] = Fq::zero(spec);
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

bool mats_equal(const Mat& a, const Mat& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

Vec mat_vec(const Mat& m, const Vec& v) {
  Vec out;
  out.reserve(m.size());
  for (const auto& row : m) {
    Fq s = Fq::zero(v[0].spec());
    for (size_t j = 0; j < row.size(); ++j) s = s + row[j] * v[j];
    out.push_back(s);
  }
  return out;
}

}  // namespace joindeg
