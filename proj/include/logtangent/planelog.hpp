// Logarithmic sheaves of plane curves and line arrangements: graded
// presentations, Chern data, restriction/splitting and jumping machinery,
// freeness certificates, and the explicit pointed-curve constructions.
//
// Twist bookkeeping used throughout (see GradedPresentation): a presentation
// carries a matrix over the coordinate ring together with a role; the sheaf
// of interest E is ker(matrix)(untwist) or coker(matrix)(untwist).  All
// splitting types and Chern pairs reported by this module refer to E itself
// (tangent-side conventions; the dual 1-form-side pair is the negation).
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "logtangent/binary.hpp"
#include "logtangent/forms.hpp"
#include "logtangent/graded.hpp"

namespace logtangent {

/// First and second Chern numbers of a rank-2 sheaf on the plane.
struct ChernPair {
  int c1 = 0;
  int c2 = 0;
  bool operator==(const ChernPair&) const = default;
  std::string str() const;  ///< "(c1,c2)"
};

/// Chern pair of the logarithmic 1-form sheaf of a smooth degree-d curve
/// with k marked points on it: (d-3, d^2-3d+3+k).  k = 0 is the plain
/// logarithmic case.
ChernPair chern_generalized(int d, int k);

/// (c2 of a twist) bookkeeping: c2(E(k)) = c2 + k*c1 + k^2, c1(E(k)) = c1+2k.
ChernPair chern_twist(const ChernPair& c, int k);

/// Euler characteristic chi(E(t)) of a rank-r sheaf on P^2 with Chern pair
/// (c1,c2): r*(t+1)(t+2)/2 + c1*(2t+3)/2 + (c1^2-2*c2)/2.
Rational chi_sheaf(int rank, int c1, int c2, int t);

/// Reduced plane curve; smooth is the result of an exact ideal-membership
/// rank test (surjectivity of the Jacobian ideal in degree 3d-5), which is
/// unconditional in every degree.
struct PlaneCurve {
  Form f;
  int degree = 0;
  bool smooth = false;
};

/// Validates and classifies a curve; throws std::invalid_argument on the
/// zero form.
PlaneCurve make_plane_curve(const Form& f);

/// Exact smoothness test: the Jacobian ideal of a smooth curve contains
/// every form of degree 3d-5, and conversely a singular point blocks
/// surjectivity in every degree.
bool is_smooth_curve(const Form& f);

/// A point where `multiplicity` >= 2 of the arrangement's lines meet.
struct MultiplePoint {
  PointP2 point;
  int multiplicity = 0;
};

/// Line arrangement with its multiple-point data.
struct Arrangement {
  std::vector<LineP2> lines;
  std::vector<MultiplePoint> multiplePoints;  ///< sorted by point
};

/// Builds the multiple-point list from pairwise intersections and checks
/// the count identity sum C(s,2) = C(m,2).  Lines must be distinct, m >= 2.
Arrangement make_arrangement(const std::vector<LineP2>& lines);

/// Chern pair of the log tangent sheaf of the arrangement:
/// c1 = 3-m, c2 = sum(s_x - 1) + 3 - 2m over multiple points x.
ChernPair arrangement_chern(const Arrangement& a);

/// Largest number of lines through a common point.
int arrangement_multiplicity(const Arrangement& a);

/// Result of the sufficient multiplicity-based freeness criteria.  When
/// free, T(-log A) = O(e1) + O(e2) with exponents as reported (so
/// e1 + e2 = c1 and e1*e2 = c2).
struct FreenessVerdict {
  bool free = false;
  std::pair<int, int> exponents{0, 0};
  std::string note;
};

/// Certifies freeness when 2*m(D) >= m+1 or 2*m(D) = m and the matching
/// twisted c2 vanishes; otherwise returns free = false with a note (the
/// criteria are sufficient, not exhaustive).
FreenessVerdict freeness_certificate(const Arrangement& a);

/// Smooth curve with distinct marked points lying on it.
struct PointedCurve {
  PlaneCurve curve;
  std::vector<PointP2> points;
};

/// Validates the configuration; throws std::invalid_argument on violations
/// (singular curve, point off the curve, duplicate points).
PointedCurve make_pointed_curve(const Form& f, std::vector<PointP2> points);

/// How a presentation matrix models its sheaf.
enum class Role { Kernel, Cokernel };

/// Graded presentation of a sheaf E on P^2:
///   Role::Kernel:    E = ker(matrix)(untwist)
///   Role::Cokernel:  E = coker(matrix)(untwist)
/// `chern` always refers to E.
struct GradedPresentation {
  Role role = Role::Cokernel;
  GradedFormMatrix matrix;
  int rank = 0;
  ChernPair chern;
  int untwist = 0;
  std::string label;
};

/// Kernel-role presentation of T(-log C) for a smooth curve: the gradient
/// row O^3 -> O(d-1), whose kernel is T(-log C)(-1).
GradedPresentation logtangent_presentation(const PlaneCurve& c);

/// Same construction for a line arrangement (f = product of the lines);
/// Chern data from arrangement_chern.
GradedPresentation arrangement_presentation(const Arrangement& a);

/// Hilbert function of the model module (kernel or cokernel of the matrix,
/// before untwisting) in degree t.
int presentation_hilbert(const GradedPresentation& p, int t);

/// Chern pair of the model module's sheaf (E untwisted back).
ChernPair model_chern(const GradedPresentation& p);

/// Checks hilbert(t) == chi(model, t) on four consecutive stable degrees.
bool chi_consistent(const GradedPresentation& p);

/// Rank of the matrix evaluated at a point (well defined: graded rescaling
/// multiplies the matrix by invertible diagonals).
int rank_at_point(const GradedFormMatrix& m, const PointP2& pt);

/// Entry-wise restriction of the presentation matrix to a line.
GradedMatrixP1 restrict_presentation(const GradedPresentation& p, const LineP2& line);

/// Splitting type of E restricted to the line (degrees ascending, torsion
/// from the cokernel profile in the cokernel role).
SplittingType restricted_splitting(const GradedPresentation& p, const LineP2& line);

/// Verdict of the h^1 jumping test for one line.
struct JumpingVerdict {
  LineP2 line;
  bool jumping = false;
  int order = 0;  ///< h^1 of the normalized restricted twist
};

/// Normalized first Chern number of a rank-2 presentation: c1 + 2s in
/// {-1, 0}.
int normalized_c1(const GradedPresentation& p);

/// Jumping test: h^1(E_norm(-1-c1Normalized)|_L) > 0 where E_norm = E(s) is
/// the normalization with c1Normalized = c1 + 2s.  c1Normalized must be -1
/// or 0 and match the parity of the presentation's c1.
JumpingVerdict jumping_test(const GradedPresentation& p, int c1Normalized, const LineP2& line);

/// Outcome of a jumping-locus computation.
struct JumpingReport {
  std::vector<JumpingVerdict> tested;   ///< candidates first, then controls
  std::vector<LineP2> certified;        ///< jumping lines found (sorted)
  std::optional<Form> dualCurve;        ///< jumping-locus curve, dual coords
  std::vector<std::string> certificates;  ///< pencil certificates if requested
};

/// Cokernel presentation of the log 1-form sheaf of a smooth conic with 3
/// or 4 marked points: Hilbert-Burch data for the points, a lift of the
/// ideal generators, and a horseshoe of the two-step filtration.  For 3
/// points this is the 5x3 matrix of linear forms; for 4 points the mixed
/// O(-3)+O(-4) -> O(-2)^4 shape.  The construction self-verifies (Chern
/// data, generic rank, rank drop on the marked points, Hilbert-chi window)
/// and throws std::runtime_error on any internal failure.
GradedPresentation steiner_conic_points(const PointedCurve& qz);

/// Independent horseshoe pipeline for a smooth cubic with one marked point:
/// presents E(-1) for E the pointed log tangent sheaf (untwist = 1), from
/// the syzygy module of the gradient cut by the point condition.  Self-
/// verifies like steiner_conic_points.
GradedPresentation pointed_cubic_horseshoe(const PointedCurve& cp);

/// The fixed constant presentation of the pointed log sheaf of the family
/// of cubics through [1:1:0]: O(-3)^2 -> O(-2)^2 + O(-1)^2, rank 2,
/// Chern (0,4), rank drop exactly at [1:1:0].
GradedPresentation cubic_point_matrix();

/// Verification report for cubic_point_matrix against the independent
/// horseshoe pipeline run on the cubic x0^3 - x1^3 + a*x2^3 with marked
/// point [1:1:0].  The parameter is deliberately not echoed: the report
/// text is built from comparison outcomes only, so equal outcomes across
/// family members produce byte-identical reports.  Throws on singular
/// members (a = 0).
std::string nbar_report(const Rational& a);

/// Jumping-line locus of T(-log C) for a smooth cubic C, as a primitive
/// cubic form in the dual coordinates (stored on x0,x1,x2; print with
/// alpha_str).  Computed per coordinate chart by the determinant of the
/// restricted-partial coefficient matrix, stripped of the chart factor and
/// cross-checked between charts.
Form jumping_curve_cubic(const PlaneCurve& cubic);

/// True iff the square of the line's form lies in the span of the cubic's
/// partials (the vertex/tangency degeneration picked out by triangle
/// configurations).
bool triangle_vertex_test(const PlaneCurve& cubic, const LineP2& line);

/// Jumping set of the pointed-conic sheaf: tests the C(k,2) secants and k
/// polar tangent lines of the marked points plus `negatives` seeded random
/// control lines.  With certify = true, adds exact pencil certificates: for
/// each jumping line, the gcd of the maximal minors of the dual-parameter
/// matrix along a pencil through a pivot on that line must vanish exactly
/// at the line (and at nothing else rational in the pencil), and generic
/// seeded pencils must give a constant gcd.
JumpingReport jumping_set_pointed_conic(const PointedCurve& qz, int negatives,
                                        std::uint64_t seed, bool certify);

/// Pencil of lines through p that touch the cubic to order 3 at a single
/// point: returns the exact polynomial in the pencil parameter whose roots
/// are those lines.  Only rational roots are materialized as lines; the
/// basis member "at infinity" is tested separately.  p must avoid the curve.
struct PencilReport {
  std::vector<Rational> poly;         ///< ascending; pencil L0 + lambda*L1
  LineP2 basis0, basis1;              ///< pencil basis (lambda = 0 / infinity)
  std::vector<LineP2> rationalLines;  ///< members at rational roots
  bool infinityMember = false;        ///< whether V(basis1) itself qualifies
};
PencilReport triple_tangent_pencil(const PlaneCurve& cubic, const PointP2& p);

/// Degrees of the forced two-step filtration of a restricted log tangent
/// sheaf on a rational curve: sub-line-bundle degree 2-k and quotient
/// degree c1Restricted-2+k for k support points; forced (the extension
/// splits) iff sub - quot >= -1.  k must be >= 1.
struct KeyRestriction {
  int sub = 0;
  int quot = 0;
  bool forced = false;
};
KeyRestriction key_restriction_degrees(int c1LogRestricted, int supportCount);

/// Exact rational roots (with multiplicity collapsed) of a univariate
/// polynomial given by ascending rational coefficients.
std::vector<Rational> rational_roots(const std::vector<Rational>& poly);

/// Whether a ternary form has a linear factor with rational coefficients,
/// decided exactly by trial division against candidates assembled from the
/// form's rational points on the coordinate lines.
bool has_rational_linear_factor(const Form& f);

/// Exact division of forms; nullopt if g does not divide f.
std::optional<Form> form_divide(const Form& f, const Form& g);

/// Text round trip for presentations (role/twists/entries/meta).
std::string serialize_presentation(const GradedPresentation& p);
std::optional<GradedPresentation> parse_presentation(const std::string& text);

/// Prints a form over the dual coordinates a0,a1,a2 instead of x0,x1,x2.
std::string alpha_str(const Form& f);

}  // namespace logtangent
