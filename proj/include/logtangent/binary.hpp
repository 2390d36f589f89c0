/**
 * @file binary.hpp
 * @brief Binary forms in Q[s,t], restriction of plane data to a line, and the
 *        exact cohomology calculus for graded matrices over P^1.
 *
 * Twists are O-degree labels exactly as in graded.hpp: a matrix with source
 * twists d_j and target twists e_i presents a map ⊕_j O(d_j) → ⊕_i O(e_i),
 * entry (i,j) a binary form of degree e_i − d_j.  A kernel generator of total
 * module degree D spans an O(−D) subsheaf when all source twists are 0; in
 * general the degree-t piece of the source is ⊕_j (binary forms of degree
 * d_j + t).
 */
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "logtangent/forms.hpp"
#include "logtangent/matrixq.hpp"

namespace logtangent {

/// Dense binary form c0*s^d + c1*s^(d-1)*t + ... + cd*t^d; empty = zero.
class BinaryForm {
 public:
  BinaryForm() = default;
  explicit BinaryForm(std::vector<Rational> coeffs);
  static BinaryForm zero() { return BinaryForm(); }
  static BinaryForm monomial(const Rational& c, int s_exp, int t_exp);

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  /// Coefficient of s^(d-i) t^i.
  const Rational& coeff(int i) const { return c_[i]; }
  const std::vector<Rational>& coeffs() const { return c_; }

  BinaryForm operator+(const BinaryForm& o) const;
  BinaryForm operator-(const BinaryForm& o) const;
  BinaryForm operator*(const BinaryForm& o) const;
  BinaryForm operator*(const Rational& x) const;
  bool operator==(const BinaryForm& o) const { return c_ == o.c_; }

  Rational evaluate(const Rational& s, const Rational& t) const;
  std::string str() const;

 private:
  void trim();
  std::vector<Rational> c_;  // degree-homogeneous; zero iff empty
};

/// dim of binary forms of degree d: d+1 for d >= 0, else 0.
int dim_binary(int d);
/// Canonical monomial basis order: s^d, s^(d-1) t, …, t^d (index = t-power).

/// Substitute the line's deterministic chart (forms.hpp) into f.
BinaryForm restrict_form(const Form& f, const LineP2& line);

/// Matrix of binary forms with twist data; same conventions as
/// GradedFormMatrix (O-degree labels, entry degree = target - source).
struct GradedMatrixP1 {
  std::vector<std::vector<BinaryForm>> entries;
  std::vector<int> source;
  std::vector<int> target;

  std::size_t rows() const { return target.size(); }
  std::size_t cols() const { return source.size(); }
  int entry_degree(std::size_t i, std::size_t j) const {
    return target[i] - source[j];
  }
  void validate() const;
  GradedMatrixP1 transpose_dual() const;  ///< entries^t, twists negated
};

/// Degree-t piece ⊕_j (deg d_j + t) → ⊕_i (deg e_i + t) on monomial bases.
MatrixQ graded_map_matrix_p1(const GradedMatrixP1& m, int t);

/// Rank of the matrix over the function field Q(s,t), computed exactly by
/// evaluating at deterministically chosen rational points (more points than
/// any minor's degree, so vanishing at all of them forces the zero minor).
std::size_t generic_rank_p1(const GradedMatrixP1& m);

/// One free generator of the kernel module, total degree D (so it spans an
/// O(-D) summand of the kernel sheaf when source twists are 0).
struct KernelGenerator {
  int total_degree = 0;
  std::vector<BinaryForm> component;  // one entry per source summand
};

/**
 * @brief Free generators of ker(m) as a graded Q[s,t]-module.
 *
 * The kernel of a map of graded free modules over Q[s,t] is free; generators
 * are found degree by degree (canonical residuals modulo multiples of lower
 * generators).  The result is verified: the generated Hilbert function must
 * match the exact kernel dimension well past the last generator degree, else
 * std::runtime_error.
 */
std::vector<KernelGenerator> kernel_splitting(const GradedMatrixP1& m);

/// h^1 of the cokernel sheaf twisted by t: dim ker of the dual transpose
/// piece in degree -t-2 (exact in every degree; torsion contributes 0).
int h1_dim(const GradedMatrixP1& m, int t);
/// Hilbert function of the cokernel module at degree t.
int coker_hilbert(const GradedMatrixP1& m, int t);

/// Splitting type of a coherent sheaf on P^1: locally free part degrees
/// (ascending) plus finite torsion length.  Prints "(d1,d2;torsion=k)".
struct SplittingType {
  std::vector<int> degrees;
  int torsion = 0;
  std::string str() const;
  bool operator==(const SplittingType& o) const = default;
};

/// Full cohomological profile of coker(m).
struct CokerProfile {
  SplittingType splitting;   ///< degrees of the locally free part + torsion
  int rank = 0;              ///< rank of the cokernel sheaf
  struct Row {
    int t;
    int hs;  ///< Hilbert function of the module
    int hv;  ///< h^1 of the sheaf twisted by t
  };
  std::vector<Row> table;
  std::pair<int, int> window{0, 0};
};

/**
 * @brief Recover rank, splitting degrees and torsion length of coker(m) from
 *        exact Hilbert data.
 *
 * Degrees from the h^1 step function, rank from the generic rank, torsion
 * from the stable Hilbert intercept; the fit is re-verified on the window
 * plus five extra degrees.  The default window is
 * [-(maxTwist+rank+2), +(maxTwist+rank+2)]; it is widened once on failure,
 * after which std::runtime_error is thrown.
 */
CokerProfile coker_profile(const GradedMatrixP1& m,
                           std::optional<std::pair<int, int>> t_range = {});

}  // namespace logtangent
