/**
 * @file matrixq.hpp
 * @brief Dense exact linear algebra over Q.
 *
 * Deterministic throughout: elimination always picks the first row with a
 * nonzero entry in the pivot column, so identical inputs give bit-identical
 * reduced forms, nullspace bases and solutions on every platform.
 */
#pragma once

#include <optional>
#include <vector>

#include "logtangent/rational.hpp"

namespace logtangent {

/// Row-major dense matrix over Q.
class MatrixQ {
 public:
  MatrixQ() = default;
  MatrixQ(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows, std::vector<Rational>(cols, Rational(0))) {}
  static MatrixQ identity(std::size_t n);
  static MatrixQ from_rows(std::vector<std::vector<Rational>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& at(std::size_t i, std::size_t j) { return a_[i][j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return a_[i][j]; }
  const std::vector<Rational>& row(std::size_t i) const { return a_[i]; }

  MatrixQ transpose() const;
  MatrixQ operator*(const MatrixQ& o) const;
  std::vector<Rational> apply(const std::vector<Rational>& v) const;

  /// In-place reduced row echelon form; returns the pivot column indices.
  std::vector<std::size_t> rref();
  std::size_t rank() const;
  /// Determinant (square matrices only).
  Rational det() const;

  /**
   * Canonical nullspace basis from the RREF: one vector per free column (in
   * increasing column order), with entry 1 at the free column.
   */
  std::vector<std::vector<Rational>> nullspace() const;

  /// One solution x of A x = b, if any.
  std::optional<std::vector<Rational>> solve(const std::vector<Rational>& b) const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<std::vector<Rational>> a_;
};

/**
 * @brief Incrementally maintained row space with canonical reduction.
 *
 * Used for minimal-generator extraction and membership tests: rows are kept
 * fully reduced (a private RREF), and reduce() returns the residual of a
 * vector modulo the current span.
 */
class RowSpan {
 public:
  explicit RowSpan(std::size_t width) : width_(width) {}

  std::size_t dim() const { return basis_.size(); }
  std::size_t width() const { return width_; }

  /// Residual of v modulo the span (v unchanged if the span is empty).
  std::vector<Rational> reduce(std::vector<Rational> v) const;
  bool contains(const std::vector<Rational>& v) const;
  /// Adds v to the span; returns true if the dimension grew.
  bool add(std::vector<Rational> v);

 private:
  std::size_t width_;
  // Basis rows in RREF (each starts with 1 at its pivot column; pivots
  // strictly increase down the list).
  std::vector<std::vector<Rational>> basis_;
  std::vector<std::size_t> pivots_;
};

}  // namespace logtangent
