#include "logtangent/matrixq.hpp"

#include <stdexcept>

namespace logtangent {

MatrixQ MatrixQ::identity(std::size_t n) {
  MatrixQ m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.a_[i][i] = 1;
  return m;
}

MatrixQ MatrixQ::from_rows(std::vector<std::vector<Rational>> rows) {
  MatrixQ m;
  m.rows_ = rows.size();
  m.cols_ = rows.empty() ? 0 : rows[0].size();
  for (const auto& r : rows)
    if (r.size() != m.cols_) throw std::invalid_argument("ragged rows");
  m.a_ = std::move(rows);
  return m;
}

MatrixQ MatrixQ::transpose() const {
  MatrixQ t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.a_[j][i] = a_[i][j];
  return t;
}

MatrixQ MatrixQ::operator*(const MatrixQ& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("dimension mismatch in *");
  MatrixQ r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      if (a_[i][k] == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        if (o.a_[k][j] == 0) continue;
        r.a_[i][j] += a_[i][k] * o.a_[k][j];
        r.a_[i][j].canonicalize();
      }
    }
  return r;
}

std::vector<Rational> MatrixQ::apply(const std::vector<Rational>& v) const {
  if (v.size() != cols_) throw std::invalid_argument("dimension mismatch in apply");
  std::vector<Rational> out(rows_, Rational(0));
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j)
      if (a_[i][j] != 0 && v[j] != 0) out[i] += a_[i][j] * v[j];
    out[i].canonicalize();
  }
  return out;
}

std::vector<std::size_t> MatrixQ::rref() {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
    std::size_t p = r;
    while (p < rows_ && a_[p][c] == 0) ++p;
    if (p == rows_) continue;
    std::swap(a_[p], a_[r]);
    Rational inv = a_[r][c];
    for (std::size_t j = c; j < cols_; ++j) {
      a_[r][j] /= inv;
      a_[r][j].canonicalize();
    }
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r || a_[i][c] == 0) continue;
      Rational f = a_[i][c];
      for (std::size_t j = c; j < cols_; ++j) {
        a_[i][j] -= f * a_[r][j];
        a_[i][j].canonicalize();
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t MatrixQ::rank() const {
  MatrixQ copy(*this);
  return copy.rref().size();
}

Rational MatrixQ::det() const {
  if (rows_ != cols_) throw std::invalid_argument("det of non-square matrix");
  MatrixQ m(*this);
  Rational d(1);
  for (std::size_t c = 0; c < cols_; ++c) {
    std::size_t p = c;
    while (p < rows_ && m.a_[p][c] == 0) ++p;
    if (p == rows_) return Rational(0);
    if (p != c) {
      std::swap(m.a_[p], m.a_[c]);
      d = -d;
    }
    d *= m.a_[c][c];
    d.canonicalize();
    Rational inv = m.a_[c][c];
    for (std::size_t i = c + 1; i < rows_; ++i) {
      if (m.a_[i][c] == 0) continue;
      Rational f = m.a_[i][c] / inv;
      for (std::size_t j = c; j < cols_; ++j) {
        m.a_[i][j] -= f * m.a_[c][j];
        m.a_[i][j].canonicalize();
      }
    }
  }
  return d;
}

std::vector<std::vector<Rational>> MatrixQ::nullspace() const {
  MatrixQ m(*this);
  auto pivots = m.rref();
  std::vector<bool> is_pivot(cols_, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t fc = 0; fc < cols_; ++fc) {
    if (is_pivot[fc]) continue;
    std::vector<Rational> v(cols_, Rational(0));
    v[fc] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m.a_[r][fc];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::vector<Rational>> MatrixQ::solve(
    const std::vector<Rational>& b) const {
  if (b.size() != rows_) throw std::invalid_argument("rhs size mismatch");
  MatrixQ aug(rows_, cols_ + 1);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) aug.a_[i][j] = a_[i][j];
    aug.a_[i][cols_] = b[i];
  }
  auto pivots = aug.rref();
  if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;  // inconsistent
  std::vector<Rational> x(cols_, Rational(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.a_[r][cols_];
  return x;
}

std::vector<Rational> RowSpan::reduce(std::vector<Rational> v) const {
  if (v.size() != width_) throw std::invalid_argument("RowSpan width mismatch");
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    const Rational& c = v[pivots_[k]];
    if (c == 0) continue;
    Rational f = c;
    for (std::size_t j = 0; j < width_; ++j) {
      if (basis_[k][j] == 0) continue;
      v[j] -= f * basis_[k][j];
      v[j].canonicalize();
    }
  }
  return v;
}

bool RowSpan::contains(const std::vector<Rational>& v) const {
  auto r = reduce(v);
  for (const auto& x : r)
    if (x != 0) return false;
  return true;
}

bool RowSpan::add(std::vector<Rational> v) {
  v = reduce(std::move(v));
  std::size_t pivot = width_;
  for (std::size_t j = 0; j < width_; ++j)
    if (v[j] != 0) {
      pivot = j;
      break;
    }
  if (pivot == width_) return false;
  Rational inv = v[pivot];
  for (auto& x : v) {
    x /= inv;
    x.canonicalize();
  }
  // Back-substitute into existing basis rows to keep full reduction.
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    const Rational& c = basis_[k][pivot];
    if (c == 0) continue;
    Rational f = c;
    for (std::size_t j = 0; j < width_; ++j) {
      if (v[j] == 0) continue;
      basis_[k][j] -= f * v[j];
      basis_[k][j].canonicalize();
    }
  }
  // Insert keeping pivot order.
  std::size_t pos = 0;
  while (pos < pivots_.size() && pivots_[pos] < pivot) ++pos;
  basis_.insert(basis_.begin() + pos, std::move(v));
  pivots_.insert(pivots_.begin() + pos, pivot);
  return true;
}

}  // namespace logtangent
