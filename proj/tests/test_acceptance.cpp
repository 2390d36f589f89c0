// Acceptance panel: one line per criterion, PASS/FAIL with elapsed time.
// Exit status is the number of failed criteria.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "logtangent/binary.hpp"
#include "logtangent/blowup.hpp"
#include "logtangent/forms.hpp"
#include "logtangent/graded.hpp"
#include "logtangent/matrixq.hpp"
#include "logtangent/planelog.hpp"

using namespace logtangent;

namespace {

struct Outcome {
  bool ok = true;
  std::string summary;
  std::vector<std::string> notes;

  void fail(const std::string& note) {
    ok = false;
    notes.push_back(note);
  }
  void require(bool cond, const std::string& note) {
    if (!cond) fail(note);
  }
};

/// Portable deterministic integer in [lo, hi] (uniform_int_distribution is
/// not bit-stable across standard libraries).
int rnd(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

PointP2 random_point(std::mt19937_64& rng) {
  for (;;) {
    int a = rnd(rng, -9, 9), b = rnd(rng, -9, 9), c = rnd(rng, -9, 9);
    if (a == 0 && b == 0 && c == 0) continue;
    return PointP2(Rational(a), Rational(b), Rational(c));
  }
}

LineP2 random_line(std::mt19937_64& rng) {
  for (;;) {
    int a = rnd(rng, -9, 9), b = rnd(rng, -9, 9), c = rnd(rng, -9, 9);
    if (a == 0 && b == 0 && c == 0) continue;
    return LineP2(Rational(a), Rational(b), Rational(c));
  }
}

Form random_form(std::mt19937_64& rng, int degree) {
  for (;;) {
    std::vector<Rational> coeffs;
    for (int i = 0; i < dim_forms(degree); ++i)
      coeffs.push_back(Rational(rnd(rng, -9, 9)));
    Form f = Form::from_coefficients(degree, coeffs);
    if (!f.is_zero()) return f;
  }
}

/// The unique conic through five points, when the linear system has a
/// one-dimensional solution space; nullopt otherwise.
std::optional<Form> conic_through(const std::vector<PointP2>& pts) {
  auto monos = monomials_of_degree(2);
  MatrixQ m(pts.size(), monos.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    auto rc = pts[i].rational_coords();
    for (std::size_t j = 0; j < monos.size(); ++j) {
      Form mono = Form::term(Rational(1), monos[j].e[0], monos[j].e[1],
                             monos[j].e[2]);
      m.at(i, j) = mono.evaluate(rc);
    }
  }
  auto ns = m.nullspace();
  if (ns.size() != 1) return std::nullopt;
  return Form::from_coefficients(2, ns[0]).primitive();
}

/// Fresh smooth conic with its five seeded defining points.
std::pair<Form, std::vector<PointP2>> seeded_smooth_conic(
    std::mt19937_64& rng) {
  for (;;) {
    std::vector<PointP2> pts;
    while (pts.size() < 5) {
      PointP2 p = random_point(rng);
      bool dup = false;
      for (const PointP2& q : pts) dup = dup || q == p;
      if (!dup) pts.push_back(p);
    }
    auto q = conic_through(pts);
    if (!q || !is_smooth_curve(*q)) continue;
    return {*q, pts};
  }
}

std::string pair_str(const std::pair<int, int>& p) {
  return "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")";
}

// --------------------------------------------------------------------------

Outcome criterion1_conic_uniformity() {
  Outcome out;
  std::mt19937_64 rng(101);
  const SplittingType balanced{{0, 1}, 0};
  int jumping = 0, nonuniform = 0;
  for (int c = 0; c < 20; ++c) {
    auto [q, pts] = seeded_smooth_conic(rng);
    GradedPresentation p = logtangent_presentation(make_plane_curve(q));
    if (!(p.chern == ChernPair{1, 1})) {
      out.fail("conic " + std::to_string(c) + ": chern " + p.chern.str());
      continue;
    }
    int c1n = normalized_c1(p);
    std::vector<LineP2> panel;
    for (const PointP2& z : pts) panel.push_back(tangent_line(q, z));
    while (panel.size() < 100) panel.push_back(random_line(rng));
    for (const LineP2& l : panel) {
      if (!(restricted_splitting(p, l) == balanced)) ++nonuniform;
      if (jumping_test(p, c1n, l).jumping) ++jumping;
    }
  }
  out.require(nonuniform == 0, std::to_string(nonuniform) +
                                    " restrictions deviated from (0,1)");
  out.require(jumping == 0,
              std::to_string(jumping) + " unexpected jumping lines");
  out.summary = "20 seeded smooth conics x 100 lines: every splitting (0,1), "
                "no jumping lines";
  return out;
}

Outcome criterion2_triangle() {
  Outcome out;
  const Form triangle = *parse_form("x0*x1*x2");
  Form fermat = *parse_form("x0^3+x1^3+x2^3");
  out.require(jumping_curve_cubic(make_plane_curve(fermat)) == triangle,
              "Fermat cubic: dual curve is not the coordinate triangle");
  for (const char* a : {"1", "2", "3", "1/2"}) {
    Form f = *parse_form(std::string("x0^3-x1^3+") + a + "*x2^3");
    out.require(jumping_curve_cubic(make_plane_curve(f)) == triangle,
                std::string("x0^3-x1^3+") + a +
                    "*x2^3: dual curve is not the coordinate triangle");
  }
  PlaneCurve fc = make_plane_curve(fermat);
  for (const char* l : {"[1:0:0]", "[0:1:0]", "[0:0:1]"})
    out.require(triangle_vertex_test(fc, *parse_line(l)),
                std::string("vertex test false on coordinate line ") + l);
  std::mt19937_64 rng(202);
  int falsePositives = 0;
  std::vector<LineP2> controls = {*parse_line("[1:1:0]"), *parse_line("[1:0:1]"),
                                  *parse_line("[0:1:1]"), *parse_line("[1:1:1]"),
                                  *parse_line("[1:2:3]")};
  while (controls.size() < 55) {
    LineP2 l = random_line(rng);
    const auto& co = l.coords();
    int zeros = 0;
    for (int i = 0; i < 3; ++i) zeros += (co[i] == 0);
    if (zeros == 2) continue;  // skip the coordinate lines themselves
    controls.push_back(l);
  }
  for (const LineP2& l : controls)
    if (triangle_vertex_test(fc, l)) ++falsePositives;
  out.require(falsePositives == 0,
              std::to_string(falsePositives) +
                  " non-coordinate lines passed the vertex test");
  out.summary = "five cubics give the dual triangle exactly; vertex test true "
                "exactly on the coordinate lines";
  return out;
}

Outcome criterion3_arrangements() {
  Outcome out;
  // pencils of m lines through [0:0:1]
  for (int m = 3; m <= 7; ++m) {
    std::vector<LineP2> lines = {LineP2(Rational(1), Rational(0), Rational(0)),
                                 LineP2(Rational(0), Rational(1), Rational(0))};
    for (int k = 1; k + 2 <= m; ++k)
      lines.push_back(LineP2(Rational(1), Rational(k), Rational(0)));
    FreenessVerdict v = freeness_certificate(make_arrangement(lines));
    out.require(v.free, "pencil m=" + std::to_string(m) + " not certified");
    out.require(v.exponents == std::pair<int, int>(1, 2 - m),
                "pencil m=" + std::to_string(m) + ": exponents " +
                    pair_str(v.exponents));
  }
  // six lines through four general points: four triple + three double points
  std::vector<LineP2> quad = {*parse_line("[0:0:1]"), *parse_line("[0:1:0]"),
                              *parse_line("[0:1:-1]"), *parse_line("[1:0:0]"),
                              *parse_line("[1:0:-1]"), *parse_line("[1:-1:0]")};
  Arrangement qa = make_arrangement(quad);
  int triples = 0, doubles = 0;
  for (const MultiplePoint& mp : qa.multiplePoints) {
    triples += (mp.multiplicity == 3);
    doubles += (mp.multiplicity == 2);
  }
  out.require(triples == 4 && doubles == 3,
              "six-line configuration has " + std::to_string(triples) +
                  " triple and " + std::to_string(doubles) + " double points");
  FreenessVerdict qv = freeness_certificate(qa);
  out.require(qv.free && qv.exponents == std::pair<int, int>(-1, -2),
              "six-line configuration: free=" + std::string(qv.free ? "yes" : "no") +
                  " exponents " + pair_str(qv.exponents));
  // near-pencils
  for (int m = 4; m <= 7; ++m) {
    std::vector<LineP2> lines = {LineP2(Rational(1), Rational(0), Rational(0)),
                                 LineP2(Rational(0), Rational(1), Rational(0))};
    for (int k = 1; k + 3 <= m; ++k)
      lines.push_back(LineP2(Rational(1), Rational(k), Rational(0)));
    lines.push_back(LineP2(Rational(0), Rational(0), Rational(1)));
    FreenessVerdict v = freeness_certificate(make_arrangement(lines));
    out.require(v.free, "near-pencil m=" + std::to_string(m) + " not certified");
    out.require(v.exponents.first + v.exponents.second == 3 - m,
                "near-pencil m=" + std::to_string(m) + " exponent sum");
  }
  // Chern formulas against an independent incidence recount
  std::mt19937_64 rng(303);
  for (int trial = 0; trial < 25; ++trial) {
    int m = rnd(rng, 3, 7);
    std::vector<LineP2> lines;
    while (static_cast<int>(lines.size()) < m) {
      LineP2 l = random_line(rng);
      bool dup = false;
      for (const LineP2& o : lines) dup = dup || o == l;
      if (!dup) lines.push_back(l);
    }
    Arrangement a = make_arrangement(lines);
    ChernPair chern = arrangement_chern(a);
    out.require(chern.c1 == 3 - m,
                "trial " + std::to_string(trial) + ": c1 != 3-m");
    std::set<PointP2> meets;
    for (std::size_t i = 0; i < lines.size(); ++i)
      for (std::size_t j = i + 1; j < lines.size(); ++j)
        meets.insert(line_intersection(lines[i], lines[j]));
    int c2 = 3 - 2 * m;
    for (const PointP2& p : meets) {
      int s = 0;
      for (const LineP2& l : lines) s += l.contains(p);
      c2 += s - 1;
    }
    out.require(chern.c2 == c2, "trial " + std::to_string(trial) +
                                    ": c2 formula disagrees with recount");
  }
  out.summary = "pencils, near-pencils and the 4-triple-point sextet certify "
                "free; Chern formulas match 25 seeded recounts";
  return out;
}

Outcome criterion4_steiner() {
  Outcome out;
  Form q = *parse_form("x0*x1+x1*x2+x2*x0");
  std::vector<PointP2> z = {*parse_point("[1:0:0]"), *parse_point("[0:1:0]"),
                            *parse_point("[0:0:1]")};
  GradedPresentation p = steiner_conic_points(make_pointed_curve(q, z));
  out.require(p.rank == 2, "rank != 2");
  out.require(p.chern == ChernPair{-1, 4}, "chern " + p.chern.str());
  const int full = static_cast<int>(p.matrix.source.size());
  for (const PointP2& pt : z)
    out.require(rank_at_point(p.matrix, pt) == full - 1,
                "no rank drop at " + pt.str());
  std::mt19937_64 rng(404);
  for (int i = 0; i < 50; ++i) {
    PointP2 pt = random_point(rng);
    bool marked = false;
    for (const PointP2& zp : z) marked = marked || zp == pt;
    if (marked) continue;
    out.require(rank_at_point(p.matrix, pt) == full,
                "rank drop off the marked points at " + pt.str());
  }
  int c1n = normalized_c1(p);
  std::vector<LineP2> expected;
  for (const char* l : {"[1:0:0]", "[0:1:0]", "[0:0:1]", "[1:1:0]", "[1:0:1]",
                        "[0:1:1]"})
    expected.push_back(*parse_line(l));
  for (const LineP2& l : expected) {
    JumpingVerdict v = jumping_test(p, c1n, l);
    out.require(v.jumping && v.order == 1,
                "expected jumping of order 1 on " + l.str());
  }
  int negatives = 0, falseJumps = 0;
  while (negatives < 200) {
    LineP2 l = random_line(rng);
    bool known = false;
    for (const LineP2& e : expected) known = known || e == l;
    if (known) continue;
    ++negatives;
    if (jumping_test(p, c1n, l).jumping) ++falseJumps;
  }
  out.require(falseJumps == 0,
              std::to_string(falseJumps) + " of 200 controls jumped");
  out.summary = "triangle-pointed conic: rank 2, Chern (-1,4), rank drop "
                "exactly on Z, jumping set exactly the six lines (200 controls)";
  return out;
}

Outcome criterion5_four_points() {
  Outcome out;
  std::mt19937_64 rng(505);
  auto [q, pts] = seeded_smooth_conic(rng);
  std::vector<PointP2> z(pts.begin(), pts.begin() + 4);
  PointedCurve qz = make_pointed_curve(q, z);
  std::vector<LineP2> expected;
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = i + 1; j < z.size(); ++j)
      expected.push_back(line_through(z[i], z[j]));
  for (const PointP2& pt : z) expected.push_back(tangent_line(q, pt));
  std::sort(expected.begin(), expected.end());
  expected.erase(std::unique(expected.begin(), expected.end()),
                 expected.end());
  out.require(expected.size() == 10, "secants and tangents are not distinct");
  JumpingReport rep = jumping_set_pointed_conic(qz, 30, 505, false);
  out.require(rep.certified == expected,
              "jumping set differs from the 6 secants + 4 tangents");
  out.summary = "four marked points on a seeded conic: jumping set is exactly "
                "the 6 secants plus 4 tangents";
  return out;
}

Outcome criterion6_reference_matrix() {
  Outcome out;
  GradedPresentation p = cubic_point_matrix();
  out.require(p.chern == ChernPair{0, 4}, "chern " + p.chern.str());
  PointP2 marked = *parse_point("[1:1:0]");
  out.require(rank_at_point(p.matrix, marked) == 1, "no rank drop at [1:1:0]");
  std::mt19937_64 rng(606);
  for (int i = 0; i < 100; ++i) {
    PointP2 pt = random_point(rng);
    if (pt == marked) continue;
    out.require(rank_at_point(p.matrix, pt) == 2,
                "rank drop away from [1:1:0] at " + pt.str());
  }
  int c1n = normalized_c1(p);
  for (const char* l : {"[1:0:0]", "[0:1:0]", "[0:0:1]"})
    out.require(jumping_test(p, c1n, *parse_line(l)).jumping,
                std::string("coordinate line not jumping: ") + l);
  int controls = 0;
  while (controls < 50) {
    LineP2 l = random_line(rng);
    const auto& co = l.coords();
    // The jumping locus of this matrix is the quartic a0*a1*a2*(a0+a1) in the
    // dual plane (degree matching c2 = 4): lines through a coordinate vertex
    // or through the marked point [1:1:0].  Controls must avoid all of it.
    if (co[0] == 0 || co[1] == 0 || co[2] == 0 || co[0] + co[1] == 0) continue;
    ++controls;
    out.require(!jumping_test(p, c1n, l).jumping,
                "control line jumped: " + l.str());
  }
  std::string r1 = nbar_report(Rational(1));
  std::string r2 = nbar_report(Rational(2));
  std::string r3 = nbar_report(Rational(3));
  out.require(r1 == r2 && r2 == r3,
              "family reports differ across parameters 1, 2, 3");
  out.require(r1.find("chi window: match") != std::string::npos,
              "Hilbert window comparison did not match");
  out.require(r1.find("member jumping panel matches: yes") != std::string::npos,
              "family pipeline jumping panel mismatch");
  out.summary = "reference matrix: singular locus {[1:1:0]}, Chern (0,4), "
                "coordinate lines jump, 50 controls off the dual quartic do "
                "not; family report identical for a in {1,2,3}";
  return out;
}

Outcome criterion7_syzygy_golden() {
  Outcome out;
  std::vector<Form> row = {*parse_form("x2^2"), *parse_form("x1^2*x2"),
                           *parse_form("x0*x1^2-x1^3")};
  SyzygyBasis basis = syzygies_up_to(row, 4);
  out.require(basis.generators.size() == 2,
              std::to_string(basis.generators.size()) + " generators");
  SyzygyBasis frozen;
  frozen.input = row;
  frozen.input_degrees = {2, 3, 3};
  frozen.generators.push_back(
      {{*parse_form("x1^2"), -*parse_form("x2"), Form()}, 4});
  frozen.generators.push_back(
      {{Form(), *parse_form("x0-x1"), -*parse_form("x2")}, 4});
  for (const SyzygyColumn& c : frozen.generators)
    out.require(syzygy_module_contains(basis, c.entries, c.total_degree),
                "frozen column missing from the computed module");
  for (const SyzygyColumn& c : basis.generators)
    out.require(syzygy_module_contains(frozen, c.entries, c.total_degree),
                "computed column missing from the frozen module");
  out.summary = "syzygies of (x2^2, x1^2*x2, x0*x1^2-x1^3) up to degree 4 "
                "match the frozen matrix by mutual membership";
  return out;
}

Outcome criterion8_lattice() {
  Outcome out;
  std::vector<PicClass> ls = lines27();
  out.require(ls.size() == 27, "not 27 classes");
  std::set<std::string> uniq;
  for (const PicClass& c : ls) uniq.insert(c.str());
  out.require(uniq.size() == 27, "line classes not distinct");
  for (const PicClass& c : ls) {
    out.require(intersect(c, c) == -1, c.str() + ": self-intersection != -1");
    out.require(intersect(c, pic_K()) == -1, c.str() + ": K-degree != -1");
    out.require(genus(c) == 0, c.str() + ": genus != 0");
  }
  for (std::size_t i = 0; i < ls.size(); ++i) {
    int meets = 0;
    for (std::size_t j = 0; j < ls.size(); ++j) {
      if (i == j) continue;
      int v = intersect(ls[i], ls[j]);
      out.require(v == 0 || v == 1, "incidence value out of {0,1}");
      meets += v;
    }
    out.require(meets == 10, ls[i].str() + " meets " + std::to_string(meets));
  }
  // Cremona relabeling: involution, isometry, fixes H, permutes the lines
  out.require(cremona(pic_H()) == pic_H(), "H not fixed");
  out.require(cremona(pic_K()) == pic_K(), "K not fixed");
  std::set<std::string> images;
  for (const PicClass& c : ls) {
    out.require(cremona(cremona(c)) == c, "not an involution on " + c.str());
    images.insert(cremona(c).str());
  }
  out.require(images == uniq, "does not permute the 27 lines");
  std::vector<PicClass> basis = {pic_L(),    pic_E(1), pic_E(2), pic_E(3),
                                 pic_E(4),   pic_E(5), pic_E(6), pic_H(),
                                 pic_line(1, 2)};
  for (const PicClass& x : basis)
    for (const PicClass& y : basis)
      out.require(intersect(cremona(x), cremona(y)) == intersect(x, y),
                  "pairing not preserved");
  out.summary = "27 classes with C^2=-1, K.C=-1, 10-regular incidence; "
                "Cremona map is a pairing-preserving involution fixing H";
  return out;
}

Outcome criterion9_key_lemma() {
  Outcome out;
  PicClass twoL{2, {0, 0, 0, 0, 0, 0}};
  PicClass pencil{1, {-1, 0, 0, 0, 0, 0}};
  KeySplitting transverse = key_splitting_on_S(twoL, pencil, 2);
  out.require(transverse.tangent.sub == 0 && transverse.tangent.quot == 0 &&
                  transverse.tangent.forced,
              "transverse pencil case != (0,0)");
  KeySplitting tangency = key_splitting_on_S(twoL, pencil, 1);
  out.require(tangency.tangent.sub == 1 && tangency.tangent.quot == -1 &&
                  tangency.tangent.forced,
              "tangency pencil case != (1,-1)");
  PicClass cubicThroughP1{3, {-1, 0, 0, 0, 0, 0}};
  KeySplitting exceptional = key_splitting_on_S(cubicThroughP1, pic_E(1), 1);
  out.require(exceptional.tangent.sub == 1 && exceptional.tangent.quot == -1,
              "exceptional-line case != degrees {1,-1}");
  out.require(exceptional.omega == std::pair<int, int>(1, -1),
              "exceptional-line log cotangent pair != {-1,1}");
  // plain cotangent restriction table: lines and conic classes
  for (const PicClass& c : lines27()) {
    KeyRestriction r = cotangent_restriction(c);
    out.require(r.sub == 1 && r.quot == -2 && r.forced,
                "cotangent on line " + c.str() + " != (1,-2)");
  }
  std::vector<PicClass> conics;
  for (int i = 1; i <= 6; ++i) {
    PicClass c{1, {0, 0, 0, 0, 0, 0}};
    c.b[i - 1] = -1;
    conics.push_back(c);  // pencil classes L - Ei
  }
  for (int i = 1; i <= 6; ++i)
    for (int j = i + 1; j <= 6; ++j) {
      PicClass c{2, {-1, -1, -1, -1, -1, -1}};
      c.b[i - 1] = 0;
      c.b[j - 1] = 0;
      conics.push_back(c);  // conics through four of the six points
    }
  for (const PicClass& c : conics) {
    KeyRestriction r = cotangent_restriction(c);
    out.require(r.sub == 0 && r.quot == -2 && r.forced,
                "cotangent on conic " + c.str() + " != (0,-2)");
  }
  out.summary = "all four splitting cases on S reproduced; cotangent "
                "restriction table verified on lines and conics";
  return out;
}

Outcome criterion10_candidates() {
  Outcome out;
  PicClass L = pic_L();
  CandidateSet first = destabilizer_search(L, restriction_table(L), -8, 8);
  std::vector<PicClass> wantFirst = {PicClass{-2, {1, 1, 1, 1, 1, 1}},
                                     PicClass{0, {0, 0, 0, 0, 0, 0}}};
  if (first.candidates == wantFirst) {
    out.notes.push_back(
        "first search: candidates exactly {(-2;1,1,1,1,1,1), "
        "(0;0,0,0,0,0,0)}");
  } else {
    out.fail("first search returned " +
             std::to_string(first.candidates.size()) + " candidates");
  }

  PicClass twoL{2, {0, 0, 0, 0, 0, 0}};
  CandidateSet second = destabilizer_search(
      twoL, restriction_table(twoL, {"quad-tangent:6"}), -8, 8);
  std::vector<PicClass> values = value_table(second.candidates);
  // Reference candidate table for the single-tangency scenario (11 rows,
  // frozen): the expected outcome of the search.
  const std::vector<PicClass> reference = {
      PicClass{-4, {3, 3, 2, 2, 2, 2}}, PicClass{-4, {4, 2, 2, 2, 2, 2}},
      PicClass{-3, {2, 2, 2, 2, 2, 1}}, PicClass{-3, {2, 2, 2, 2, 2, 2}},
      PicClass{-3, {3, 2, 2, 2, 1, 1}}, PicClass{-3, {3, 3, 2, 1, 1, 1}},
      PicClass{-2, {2, 2, 1, 1, 1, 1}}, PicClass{-2, {2, 2, 2, 1, 1, 0}},
      PicClass{-2, {2, 2, 2, 1, 1, 1}}, PicClass{-1, {1, 1, 1, 1, 1, 0}},
      PicClass{-1, {1, 1, 1, 1, 1, 1}}};
  std::vector<PicClass> sortedRef = reference;
  std::sort(sortedRef.begin(), sortedRef.end());
  if (values == sortedRef) {
    out.notes.push_back("second search: value table matches the reference");
  } else {
    out.fail("second search: value table has " +
             std::to_string(values.size()) + " rows, reference has " +
             std::to_string(sortedRef.size()));
    for (const PicClass& v : values)
      if (std::find(sortedRef.begin(), sortedRef.end(), v) == sortedRef.end())
        out.notes.push_back("extra row satisfying every linear constraint: " +
                            v.str());
    for (const PicClass& v : sortedRef)
      if (std::find(values.begin(), values.end(), v) == values.end())
        out.notes.push_back("reference row missing from the search: " +
                            v.str());
    out.notes.push_back(
        "the scenario's linear constraint system is necessary but not "
        "sufficient: eliminating the extra row requires a geometric argument "
        "beyond these inequalities");
  }
  out.summary = "exhaustive box searches for the two boundary divisors";
  return out;
}

Outcome criterion11_property_suites() {
  Outcome out;
  // Euler identity on 1000 seeded forms
  std::mt19937_64 rng(1111);
  int eulerFails = 0;
  for (int i = 0; i < 1000; ++i) {
    int d = rnd(rng, 1, 5);
    Form f = random_form(rng, d);
    Form sum;
    for (int v = 0; v < 3; ++v)
      sum = sum + Form::variable(v) * f.derivative(v);
    if (!(sum == f * Rational(d))) ++eulerFails;
  }
  out.require(eulerFails == 0,
              std::to_string(eulerFails) + " Euler identity failures");

  // splitting degrees + torsion == c1 on the golden presentations
  std::vector<LineP2> pencil = {*parse_line("[1:0:0]"), *parse_line("[0:1:0]"),
                                *parse_line("[1:1:0]"), *parse_line("[1:2:0]"),
                                *parse_line("[1:3:0]")};
  struct GoldenCase {
    GradedPresentation p;
    // Restricting a presentation to a component of its own divisor is only
    // right-exact, and through a multiple point of the divisor the restricted
    // matrix acquires a common zero (torsion), so the split-sum identity is
    // asserted off these lines and off pencils through these points.
    std::vector<LineP2> excludedLines;
    std::vector<PointP2> excludedPoints;
  };
  std::vector<GoldenCase> goldens;
  goldens.push_back({logtangent_presentation(
                         make_plane_curve(*parse_form("x0^2+x1^2+x2^2"))),
                     {},
                     {}});
  goldens.push_back({logtangent_presentation(
                         make_plane_curve(*parse_form("x0^3+x1^3+x2^3"))),
                     {},
                     {}});
  goldens.push_back({steiner_conic_points(make_pointed_curve(
                         *parse_form("x0*x1+x1*x2+x2*x0"),
                         {*parse_point("[1:0:0]"), *parse_point("[0:1:0]"),
                          *parse_point("[0:0:1]")})),
                     {},
                     {}});
  goldens.push_back({cubic_point_matrix(), {}, {}});
  goldens.push_back({arrangement_presentation(make_arrangement(pencil)),
                     pencil,
                     {*parse_point("[0:0:1]")}});
  int sumFails = 0;
  std::string sumDetail;
  for (std::size_t gi = 0; gi < goldens.size(); ++gi) {
    const GoldenCase& g = goldens[gi];
    std::vector<LineP2> panel = {*parse_line("[1:0:0]"), *parse_line("[0:1:0]"),
                                 *parse_line("[0:0:1]"), *parse_line("[1:1:0]"),
                                 *parse_line("[1:0:1]"), *parse_line("[0:1:1]"),
                                 *parse_line("[1:1:1]")};
    for (int i = 0; i < 23; ++i) panel.push_back(random_line(rng));
    for (const LineP2& l : panel) {
      bool excluded = false;
      for (const LineP2& e : g.excludedLines) excluded = excluded || e == l;
      for (const PointP2& e : g.excludedPoints)
        excluded = excluded || l.contains(e);
      if (excluded) continue;
      SplittingType s = restricted_splitting(g.p, l);
      int total = s.torsion;
      for (int dg : s.degrees) total += dg;
      if (total != g.p.chern.c1) {
        ++sumFails;
        sumDetail += " [golden " + std::to_string(gi) + " line " + l.str() +
                     " sum " + std::to_string(total) + " c1 " +
                     std::to_string(g.p.chern.c1) + "]";
      }
    }
  }
  out.require(sumFails == 0, std::to_string(sumFails) +
                                 " splitting sums disagreed with c1" +
                                 sumDetail);

  // syzygy generators against a direct nullspace oracle, degree <= 2 rows
  int syzygyFails = 0;
  for (int trial = 0; trial < 12; ++trial) {
    int n = rnd(rng, 2, 4);
    std::vector<Form> row;
    for (int j = 0; j < n; ++j) row.push_back(random_form(rng, rnd(rng, 1, 2)));
    int dmax = 2 + 3;
    SyzygyBasis basis = syzygies_up_to(row, dmax);
    for (int t = 0; t <= dmax; ++t) {
      // direct multiplication-map nullspace dimension at total degree t
      std::vector<int> offsets;
      int cols = 0;
      for (const Form& f : row) {
        offsets.push_back(cols);
        cols += dim_forms(t - f.degree());
      }
      int expected = 0;
      if (cols > 0) {
        MatrixQ m(static_cast<std::size_t>(dim_forms(t)),
                  static_cast<std::size_t>(cols));
        for (std::size_t j = 0; j < row.size(); ++j) {
          auto monos = monomials_of_degree(t - row[j].degree());
          for (std::size_t k = 0; k < monos.size(); ++k) {
            Form prod = Form::term(Rational(1), monos[k].e[0], monos[k].e[1],
                                   monos[k].e[2]) *
                        row[j];
            auto coeffs = prod.coefficients(t);
            for (std::size_t r = 0; r < coeffs.size(); ++r)
              m.at(r, offsets[j] + k) = coeffs[r];
          }
        }
        expected = cols - static_cast<int>(m.rank());
      }
      if (syzygy_module_dim(basis, t) != expected) ++syzygyFails;
    }
  }
  out.require(syzygyFails == 0,
              std::to_string(syzygyFails) +
                  " syzygy degrees disagreed with the nullspace oracle");

  // coker-profile stabilization on restricted goldens
  int windowFails = 0;
  for (const GoldenCase& g : goldens) {
    for (int i = 0; i < 10; ++i) {
      LineP2 l = random_line(rng);
      CokerProfile prof = coker_profile(restrict_presentation(g.p, l),
                                        std::pair<int, int>(0, 8));
      int n = static_cast<int>(prof.table.size());
      if (n < 2) {
        ++windowFails;
        continue;
      }
      const auto& last = prof.table[n - 1];
      const auto& prev = prof.table[n - 2];
      if (last.hv != 0) ++windowFails;
      if (last.hs - prev.hs != prof.rank) ++windowFails;
    }
  }
  out.require(windowFails == 0,
              std::to_string(windowFails) + " profile stabilization failures");
  out.summary = "Euler fuzzing (1000 forms), splitting-sum identity on 150 "
                "golden restrictions, syzygy nullspace oracle, profile "
                "stabilization";
  return out;
}

}  // namespace

int main() {
  struct Entry {
    int index;
    const char* title;
    double budget;  // seconds
    std::function<Outcome()> run;
  };
  const std::vector<Entry> entries = {
      {1, "conic uniformity", 10, criterion1_conic_uniformity},
      {2, "cubic dual triangle", 5, criterion2_triangle},
      {3, "arrangement freeness and Chern formulas", 10,
       criterion3_arrangements},
      {4, "pointed-conic construction", 30, criterion4_steiner},
      {5, "four-point jumping set", 30, criterion5_four_points},
      {6, "reference pointed-cubic matrix", 30, criterion6_reference_matrix},
      {7, "syzygy golden row", 5, criterion7_syzygy_golden},
      {8, "lattice suite", 5, criterion8_lattice},
      {9, "key splitting on the surface", 5, criterion9_key_lemma},
      {10, "stability candidate search", 60, criterion10_candidates},
      {11, "property suites", 60, criterion11_property_suites},
  };

  int failed = 0;
  for (const Entry& e : entries) {
    auto start = std::chrono::steady_clock::now();
    Outcome out = e.run();
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (secs > e.budget)
      out.fail("runtime " + std::to_string(secs) + " s exceeds budget");
    std::printf("criterion %2d: %s  (%.2f s)  %s\n", e.index,
                out.ok ? "PASS" : "FAIL", secs, e.title);
    if (!out.summary.empty())
      std::printf("              %s\n", out.summary.c_str());
    for (const std::string& n : out.notes)
      std::printf("              %s\n", n.c_str());
    failed += !out.ok;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(entries.size()) - failed,
              entries.size());
  return failed;
}
