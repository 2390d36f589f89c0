/**
 * @file forms.hpp
 * @brief Homogeneous ternary forms over Q, projective points and lines.
 *
 * Conventions (fixed throughout the library):
 *  - variables x0, x1, x2; monomial order is graded lex with x0 > x1 > x2,
 *    so within one degree terms are listed with descending x0, then x1;
 *  - text grammar for forms: terms joined by '+'/'-', each term an optional
 *    rational coefficient ("p" or "p/q"), '*'-joined variable powers
 *    "x0^a*x1^b*x2^c" with "^1" omissible and unit coefficients omitted;
 *  - points and lines print as "[a:b:c]" with primitive integer coordinates,
 *    first nonzero entry positive.  Lines are given by dual coordinates:
 *    [a0:a1:a2] is the line a0*x0 + a1*x1 + a2*x2 = 0.
 */
#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "logtangent/rational.hpp"

namespace logtangent {

/// Exponent triple of a monomial x0^e0 * x1^e1 * x2^e2.
struct Mono {
  std::array<int, 3> e{0, 0, 0};

  int degree() const { return e[0] + e[1] + e[2]; }
  bool operator==(const Mono& o) const { return e == o.e; }
};

/// Strict weak order listing monomials in canonical (descending graded lex)
/// order: higher total degree first, then larger x0 exponent, then larger x1.
struct MonoOrder {
  bool operator()(const Mono& a, const Mono& b) const {
    if (a.degree() != b.degree()) return a.degree() > b.degree();
    if (a.e[0] != b.e[0]) return a.e[0] > b.e[0];
    return a.e[1] > b.e[1];
  }
};

/// All monomials of total degree d in canonical order; empty for d < 0.
std::vector<Mono> monomials_of_degree(int d);

/// dim_Q of the space of degree-d forms: (d+1)(d+2)/2 for d >= 0, else 0.
int dim_forms(int d);

/**
 * @brief A homogeneous polynomial in Q[x0,x1,x2].
 *
 * The zero form has degree() == -1.  All mutating operations keep the terms
 * homogeneous of a single degree and throw std::invalid_argument on degree
 * mismatches.
 */
class Form {
 public:
  Form() = default;

  /// c * x0^a * x1^b * x2^c2
  static Form term(const Rational& coeff, int a, int b, int c2);
  static Form variable(int i);
  static Form constant(const Rational& c);

  bool is_zero() const { return terms_.empty(); }
  /// Total degree; -1 for the zero form.
  int degree() const;

  const std::map<Mono, Rational, MonoOrder>& terms() const { return terms_; }
  Rational coeff(const Mono& m) const;

  Form operator+(const Form& o) const;
  Form operator-(const Form& o) const;
  Form operator-() const;
  Form operator*(const Form& o) const;
  Form operator*(const Rational& c) const;
  bool operator==(const Form& o) const { return terms_ == o.terms_; }

  Form derivative(int var) const;
  Rational evaluate(const std::array<Rational, 3>& p) const;

  /// Coefficient vector on monomials_of_degree(d); requires d == degree()
  /// unless zero, in which case any d >= 0 yields the zero vector.
  std::vector<Rational> coefficients(int d) const;
  static Form from_coefficients(int d, const std::vector<Rational>& coeffs);

  /// Rescale so the coefficients are coprime integers with positive leading
  /// coefficient; the zero form is unchanged.
  Form primitive() const;

  std::string str() const;

 private:
  void add_term(const Mono& m, const Rational& c);
  std::map<Mono, Rational, MonoOrder> terms_;

  friend std::optional<Form> parse_form(const std::string& text);
};

/// Parse the grammar documented in the file header.  Rejects inhomogeneous
/// input and malformed syntax.
std::optional<Form> parse_form(const std::string& text);

/// (∂f/∂x0, ∂f/∂x1, ∂f/∂x2)
std::array<Form, 3> gradient(const Form& f);

/// A point of P^2(Q), stored as a primitive integer triple with the first
/// nonzero coordinate positive.
class PointP2 {
 public:
  PointP2() : c_{Integer(0), Integer(0), Integer(1)} {}
  /// Throws std::invalid_argument on the zero triple.
  PointP2(const Rational& a, const Rational& b, const Rational& c);

  const std::array<Integer, 3>& coords() const { return c_; }
  std::array<Rational, 3> rational_coords() const;
  bool operator==(const PointP2& o) const { return c_ == o.c_; }
  bool operator<(const PointP2& o) const;

  std::string str() const;

 private:
  std::array<Integer, 3> c_;
};

std::optional<PointP2> parse_point(const std::string& text);

/// A line of P^2, by primitive dual coordinates (same normalization as
/// points).  Provides a deterministic rational parametrization.
class LineP2 {
 public:
  LineP2() : a_{Integer(1), Integer(0), Integer(0)} {}
  LineP2(const Rational& a0, const Rational& a1, const Rational& a2);

  const std::array<Integer, 3>& coords() const { return a_; }
  bool contains(const PointP2& p) const;
  bool operator==(const LineP2& o) const { return a_ == o.a_; }
  bool operator<(const LineP2& o) const;

  /// The defining linear form a0*x0 + a1*x1 + a2*x2.
  Form linear_form() const;

  /**
   * Deterministic parametrization P^1 -> L, (s:t) -> s*P + t*Q: with i the
   * first index where the dual coordinate a_i is nonzero and j < k the other
   * two indices, P = a_i*e_j - a_j*e_i and Q = a_i*e_k - a_k*e_i.
   */
  std::pair<std::array<Rational, 3>, std::array<Rational, 3>> chart() const;

  std::string str() const;

 private:
  std::array<Integer, 3> a_;
};

std::optional<LineP2> parse_line(const std::string& text);

/// Line through two distinct points (cross product, normalized).
LineP2 line_through(const PointP2& p, const PointP2& q);
/// Intersection point of two distinct lines.
PointP2 line_intersection(const LineP2& l, const LineP2& m);
/// Tangent line of V(f) at a smooth point p of it: [∂0 f(p):∂1 f(p):∂2 f(p)].
/// Throws if the gradient vanishes at p.
LineP2 tangent_line(const Form& f, const PointP2& p);

}  // namespace logtangent
