/**
 * @file blowup.hpp
 * @brief Picard-lattice calculus for the blow-up of the plane at six general
 *        points (a smooth cubic surface).
 *
 * Conventions (fixed throughout the library):
 *  - Pic = Z<L, E1..E6>, a class is a*L + b1*E1 + ... + b6*E6 and prints
 *    compactly as "(a;b1,..,b6)";
 *  - the intersection pairing is a*a' - sum_i b_i*b_i' (signature (1,6));
 *  - the canonical class is K = (-3;1,..,1) and the anticanonical
 *    polarization is H = -K = (3;-1,..,-1), so degrees and slopes are taken
 *    against H unless stated otherwise;
 *  - the 27 lines are E_i, L_ij = L-E_i-E_j and the "hat" lines
 *    Lhat_i = 2L+E_i-sum_k E_k (plane conics through the five points p_j,
 *    j != i); indices are 1-based everywhere in this header.
 */
#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "logtangent/planelog.hpp"

namespace logtangent {

/// Divisor class a*L + b1*E1 + ... + b6*E6 on the blown-up plane.
struct PicClass {
  int a = 0;
  std::array<int, 6> b{0, 0, 0, 0, 0, 0};

  std::string str() const;      ///< compact form "(a;b1,..,b6)"
  std::string verbose() const;  ///< "aL + b1 E1 + ..." with zero terms dropped
  bool operator==(const PicClass& o) const = default;
  /// Lexicographic order on (a, b1, .., b6); used for canonical listings.
  bool operator<(const PicClass& o) const;
};

PicClass operator+(const PicClass& c, const PicClass& d);
PicClass operator-(const PicClass& c, const PicClass& d);
PicClass operator*(int n, const PicClass& c);

/// Named generators and standard combinations.
PicClass pic_L();
PicClass pic_E(int i);            ///< i in 1..6; throws std::out_of_range
PicClass pic_line(int i, int j);  ///< L - E_i - E_j for distinct i, j
PicClass pic_hat_line(int i);     ///< 2L + E_i - sum_k E_k
PicClass pic_K();                 ///< (-3;1,..,1)
PicClass pic_H();                 ///< (3;-1,..,-1)

/// Parses the compact form "(a;b1,..,b6)"; whitespace tolerant.
std::optional<PicClass> parse_pic(const std::string& text);

/// Signature-(1,6) intersection pairing a*a' - sum_i b_i*b_i'.
int intersect(const PicClass& c, const PicClass& d);

/// The 27 line classes: E_1..E_6, then L_ij for i<j in lex order, then
/// Lhat_1..Lhat_6.  Each has self-intersection -1 and degree 1 against H.
std::vector<PicClass> lines27();

/// Arithmetic genus (c^2 + c.K)/2 + 1; throws std::invalid_argument if the
/// division is not exact (cannot happen for honest integer classes, kept as
/// a guard for future lattice variants).
int genus(const PicClass& c);

/// Slope of the log cotangent sheaf of the pair (S, D) against the
/// polarization h: (K + D).h / 2, exact rational.
Rational slope_log(const PicClass& D, const PicClass& h);

/**
 * @brief Direct image data of the line bundle O(aL + sum b_i E_i) under the
 *        blow-down of the first `points` exceptional divisors.
 *
 * The direct image is O(a) tensored with the ideal power I_{p_i}^(-b_i) for
 * every b_i < 0, and the first higher direct image is the skyscraper sum of
 * O/I_{p_i}^(b_i-2) over b_i > 2.  Note the strict threshold b_i > 2: an
 * alternative convention starts the thickening at b_i >= 2; this library
 * implements the strict form and does not correct it silently.
 */
struct Pushforward {
  int twist = 0;  ///< the O(twist) factor
  /// (point index, ideal power) for each b_i < 0, ascending index.
  std::vector<std::pair<int, int>> idealPowers;
  /// (point index, thickening order b_i - 2) for each b_i > 2.
  std::vector<std::pair<int, int>> thickenings;
  std::string str() const;
};

/// Computes the record above; `points` is the number of blown-up points
/// (1..6) and the remaining b entries must vanish (std::invalid_argument).
Pushforward pushforward_blowup(const PicClass& c, int points);

/**
 * @brief Splitting of the log tangent/cotangent sheaf of (S, D) restricted
 *        to a rational curve C meeting D in `supportCount` distinct points.
 *
 * The tangent-side filtration has sub-degree 2 - k and quotient degree
 * (-K - D).C - 2 + k for k = supportCount, forced to split when the degrees
 * differ by at most one in the splitting direction (same rule as
 * key_restriction_degrees).  `omega` lists the log cotangent degrees, i.e.
 * the negated pair, descending.
 */
struct KeySplitting {
  KeyRestriction tangent;
  std::pair<int, int> omega{0, 0};
};

/// Requires genus(C) == 0 and supportCount >= 1 (std::invalid_argument).
KeySplitting key_splitting_on_S(const PicClass& D, const PicClass& C,
                                int supportCount);

/// Restriction of the plain cotangent sheaf of S to a smooth rational curve:
/// sub-degree -C^2 (the conormal), quotient -2, forced iff C^2 <= 3.
KeyRestriction cotangent_restriction(const PicClass& C);

/// One linear inequality "candidate . curveClass  rel  bound" on a divisor
/// class (a;b1,..,b6), tagged with the curve family that produced it.
struct ConstraintRow {
  enum class Rel { LE, EQ, GE };

  PicClass curveClass;
  Rel rel = Rel::LE;
  int bound = 0;
  std::string provenance;

  bool satisfied(const PicClass& m) const;
  /// Interchange form "(a;b1,..,b6) <= bound # provenance".
  std::string str() const;
  /// Human-readable inequality in a, b1..b6, e.g. "a + b1 + b2 <= 2".
  std::string inequality() const;
};

/// Parses the interchange form produced by ConstraintRow::str().
std::optional<ConstraintRow> parse_constraint_row(const std::string& text);

/**
 * @brief Constraint rows for a destabilizing line bundle of the log
 *        cotangent sheaf of (S, D), from restriction to the standard
 *        rational families.
 *
 * Families: |L|, E_i, |L-E_i|, the 15 lines L_ij, the 15 conic pencils
 * |2L - E_i1 - .. - E_i4| and the 6 lines Lhat_i.  Each row bounds the
 * degree of the restricted sub-line-bundle by the larger log cotangent
 * splitting degree from key_splitting_on_S.
 *
 * Support counts: moving families use the transverse count D.C (their
 * generic member meets any fixed smooth D transversally); disjoint curves
 * (D.C = 0) use the plain cotangent row; a family whose class equals D
 * restricts to the boundary member itself, where the residue quotient is
 * trivial and the bound is 0.  The rigid lines also default to the
 * transverse count, with one exception baked in to match the worst
 * configuration: for D = 2L the lines L_ij may be tangent to the branch
 * conic, so their rows use support count 1.
 *
 * Scenario tags switch the Lhat_i rows to a non-generic configuration and
 * then drop the L_ij and conic-pencil rows (those bounds are deferred to
 * per-candidate elimination in the non-generic cases):
 *  - "three-point" / "three-point:i": every Lhat meets D in >= 3 points;
 *  - "two-point:i": Lhat_i meets D in exactly 2 points, none in fewer;
 *  - "quad-tangent:i": Lhat_i meets D in a single point, so every Lhat row
 *    takes the single-point worst-case bound.
 * Unknown tags throw std::invalid_argument.
 */
std::vector<ConstraintRow> restriction_table(
    const PicClass& D, const std::vector<std::string>& scenarios = {});

/// Result of an exhaustive box search: every candidate satisfies all rows
/// and the slope inequality; candidates are listed in lexicographic order.
struct CandidateSet {
  std::vector<PicClass> candidates;
  int boxLo = 0;
  int boxHi = 0;
  Rational slope;  ///< slope threshold used (candidate.H >= slope)
  std::vector<ConstraintRow> rows;
};

/**
 * @brief Enumerates all integer classes in [boxLo,boxHi]^7 satisfying
 *        candidate.H >= slope_log(D, H) (exact rational comparison) and
 *        every constraint row.
 *
 * Deterministic lexicographic output; adding rows never enlarges the result.
 * Throws std::invalid_argument on an empty box.
 */
CandidateSet destabilizer_search(const PicClass& D,
                                 const std::vector<ConstraintRow>& rows,
                                 int boxLo, int boxHi);

/// The class with the same a and the b entries sorted descending: the
/// "value" of a candidate up to relabeling the six points.
PicClass value_class(const PicClass& c);

/// Deduplicated, sorted value classes of a candidate list.
std::vector<PicClass> value_table(const std::vector<PicClass>& candidates);

/// The quadratic relabeling L~ = 2L-E1-E2-E3, E~1 = L-E2-E3,
/// E~2 = L-E1-E3, E~3 = L-E1-E2, E~i = E_i (i >= 4), extended linearly.
/// A lattice isometry and an involution fixing H.
PicClass cremona(const PicClass& c);

/// Type of the curve on S lying over a line in the plane, by incidence with
/// the six blown-up points.
struct MemberClass {
  enum class Kind { TwistedCubic, ConicPlusLine, ThreeLines };
  Kind kind = Kind::TwistedCubic;
  int i = 0;  ///< first incident point (1-based), if any
  int j = 0;  ///< second incident point, for Kind::ThreeLines
  std::string str() const;
  bool operator==(const MemberClass& o) const = default;
};

/// Classifies the strict transform of `line`: misses Z -> twisted cubic;
/// hits exactly p_i -> conic plus the exceptional line over p_i; joins p_i
/// and p_j -> the three lines L_ij, E_i, E_j.  Requires Z in general
/// position and at most two incidences (std::invalid_argument).
MemberClass classify_pencil_member(const LineP2& line,
                                   const std::vector<PointP2>& z);

/// General-position test for six plane points with a named witness.
struct PositionReport {
  bool general = false;
  std::string witness;  ///< violated condition, or "general position"
};

/// Six pairwise distinct points, no three collinear, not all six on a
/// conic (checked by exact 3x3 and 6x6 Veronese determinants).
PositionReport general_position(const std::vector<PointP2>& z);

}  // namespace logtangent
