/**
 * @file graded.hpp
 * @brief Graded pieces of maps between twisted free modules over Q[x0,x1,x2],
 *        and minimal syzygy bases of rows of forms.
 *
 * Twists are labelled by O-degrees: a map  ⊕_j O(s_j) → ⊕_i O(t_i)  has entry
 * (i,j) homogeneous of degree t_i − s_j (or zero).  Its degree-t piece is the
 * Q-linear map  ⊕_j S_{s_j+t} → ⊕_i S_{t_i+t}  on the canonical monomial
 * bases (descending graded lex, blocks in index order).
 */
#pragma once

#include <vector>

#include "logtangent/forms.hpp"
#include "logtangent/matrixq.hpp"

namespace logtangent {

/// Matrix of forms together with its twist data (O-degree labels).
struct GradedFormMatrix {
  std::vector<std::vector<Form>> entries;  ///< entries[i][j], row-major
  std::vector<int> source;                 ///< O-degrees s_j, one per column
  std::vector<int> target;                 ///< O-degrees t_i, one per row

  std::size_t rows() const { return target.size(); }
  std::size_t cols() const { return source.size(); }
  /// Degree every nonzero entry (i,j) must have.
  int entry_degree(std::size_t i, std::size_t j) const {
    return target[i] - source[j];
  }
  /// Throws std::invalid_argument if shapes or entry degrees are wrong.
  void validate() const;
};

/// Matrix of the degree-t piece of the map (see file header).
MatrixQ graded_map_matrix(const GradedFormMatrix& m, int t);

/// dim of the degree-t piece of ⊕_j O(s_j): Σ_j dim_forms(s_j + t).
int graded_dim(const std::vector<int>& twists, int t);

/// Coordinates of a tuple of forms (h_j), deg h_j = s_j + t, in the degree-t
/// piece of ⊕_j O(s_j).
std::vector<Rational> tuple_coordinates(const std::vector<Form>& tuple,
                                        const std::vector<int>& twists, int t);
/// Inverse of tuple_coordinates.
std::vector<Form> tuple_from_coordinates(const std::vector<Rational>& coords,
                                         const std::vector<int>& twists, int t);

/**
 * @brief One minimal generator of a syzygy module: a column (h_1,…,h_n) with
 *        Σ_j h_j f_j = 0.  total_degree = deg h_j + deg f_j (the same for all
 *        j with h_j ≠ 0).
 */
struct SyzygyColumn {
  std::vector<Form> entries;
  int total_degree = 0;
};

struct SyzygyBasis {
  std::vector<Form> input;          ///< the row (f_1,…,f_n)
  std::vector<int> input_degrees;   ///< deg f_j
  std::vector<SyzygyColumn> generators;  ///< by increasing total degree
};

/**
 * @brief Minimal generators, up to total degree dmax, of the syzygy module
 *        {(h_j) : Σ h_j f_j = 0} of a row of nonzero forms (mixed degrees
 *        allowed).
 *
 * Works degree by degree: exact nullspace of the multiplication map, reduced
 * modulo the span of (monomial × lower generator); new generators are the
 * canonical residuals, normalized to coprime integer coefficient vectors with
 * positive leading coefficient.  Deterministic.
 */
SyzygyBasis syzygies_up_to(const std::vector<Form>& row, int dmax);

/// Convenience: dmax = (max input degree) + 3, the library default.
SyzygyBasis syzygies_default(const std::vector<Form>& row);

/**
 * True when `column` (a syzygy of the basis' input row, homogeneous of the
 * given total degree) lies in the submodule generated by basis.generators.
 */
bool syzygy_module_contains(const SyzygyBasis& basis,
                            const std::vector<Form>& column, int total_degree);

/// dim of the degree-t piece of the submodule generated by the basis columns.
int syzygy_module_dim(const SyzygyBasis& basis, int t);

}  // namespace logtangent
