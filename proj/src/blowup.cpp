#include "logtangent/blowup.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "logtangent/matrixq.hpp"

namespace logtangent {

namespace {

void check_index(int i) {
  if (i < 1 || i > 6) throw std::out_of_range("point index must be in 1..6");
}

/// Appends "coeff*name" to a verbose divisor string, folding signs.
void append_term(std::string& out, int coeff, const std::string& name) {
  if (coeff == 0) return;
  if (out.empty()) {
    if (coeff == -1)
      out += "-";
    else if (coeff != 1)
      out += std::to_string(coeff);
  } else {
    out += coeff < 0 ? " - " : " + ";
    if (std::abs(coeff) != 1) out += std::to_string(std::abs(coeff));
  }
  out += name;
}

}  // namespace

std::string PicClass::str() const {
  std::string s = "(" + std::to_string(a) + ";";
  for (int i = 0; i < 6; ++i) {
    if (i) s += ",";
    s += std::to_string(b[i]);
  }
  return s + ")";
}

std::string PicClass::verbose() const {
  std::string s;
  append_term(s, a, "L");
  for (int i = 0; i < 6; ++i) append_term(s, b[i], "E" + std::to_string(i + 1));
  return s.empty() ? "0" : s;
}

bool PicClass::operator<(const PicClass& o) const {
  if (a != o.a) return a < o.a;
  return b < o.b;
}

PicClass operator+(const PicClass& c, const PicClass& d) {
  PicClass r;
  r.a = c.a + d.a;
  for (int i = 0; i < 6; ++i) r.b[i] = c.b[i] + d.b[i];
  return r;
}

PicClass operator-(const PicClass& c, const PicClass& d) {
  PicClass r;
  r.a = c.a - d.a;
  for (int i = 0; i < 6; ++i) r.b[i] = c.b[i] - d.b[i];
  return r;
}

PicClass operator*(int n, const PicClass& c) {
  PicClass r;
  r.a = n * c.a;
  for (int i = 0; i < 6; ++i) r.b[i] = n * c.b[i];
  return r;
}

PicClass pic_L() { return PicClass{1, {0, 0, 0, 0, 0, 0}}; }

PicClass pic_E(int i) {
  check_index(i);
  PicClass r;
  r.b[i - 1] = 1;
  return r;
}

PicClass pic_line(int i, int j) {
  check_index(i);
  check_index(j);
  if (i == j) throw std::out_of_range("pic_line needs distinct indices");
  return pic_L() - pic_E(i) - pic_E(j);
}

PicClass pic_hat_line(int i) {
  check_index(i);
  PicClass r{2, {-1, -1, -1, -1, -1, -1}};
  r.b[i - 1] = 0;
  return r;
}

PicClass pic_K() { return PicClass{-3, {1, 1, 1, 1, 1, 1}}; }

PicClass pic_H() { return PicClass{3, {-1, -1, -1, -1, -1, -1}}; }

std::optional<PicClass> parse_pic(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') return std::nullopt;
  s = s.substr(1, s.size() - 2);
  auto semi = s.find(';');
  if (semi == std::string::npos) return std::nullopt;

  auto parse_int = [](const std::string& tok, int& out) {
    if (tok.empty()) return false;
    std::size_t pos = 0;
    try {
      out = std::stoi(tok, &pos);
    } catch (const std::exception&) {
      return false;
    }
    return pos == tok.size();
  };

  PicClass r;
  if (!parse_int(s.substr(0, semi), r.a)) return std::nullopt;
  std::string rest = s.substr(semi + 1);
  std::stringstream ss(rest);
  std::string tok;
  int idx = 0;
  while (std::getline(ss, tok, ',')) {
    if (idx >= 6 || !parse_int(tok, r.b[idx])) return std::nullopt;
    ++idx;
  }
  if (idx != 6) return std::nullopt;
  return r;
}

int intersect(const PicClass& c, const PicClass& d) {
  int v = c.a * d.a;
  for (int i = 0; i < 6; ++i) v -= c.b[i] * d.b[i];
  return v;
}

std::vector<PicClass> lines27() {
  std::vector<PicClass> out;
  out.reserve(27);
  for (int i = 1; i <= 6; ++i) out.push_back(pic_E(i));
  for (int i = 1; i <= 6; ++i)
    for (int j = i + 1; j <= 6; ++j) out.push_back(pic_line(i, j));
  for (int i = 1; i <= 6; ++i) out.push_back(pic_hat_line(i));
  return out;
}

int genus(const PicClass& c) {
  int twice = intersect(c, c) + intersect(c, pic_K());
  if (twice % 2 != 0)
    throw std::invalid_argument("class with non-integral genus: " + c.str());
  return twice / 2 + 1;
}

Rational slope_log(const PicClass& D, const PicClass& h) {
  Rational r(intersect(pic_K() + D, h), 2);
  r.canonicalize();
  return r;
}

std::string Pushforward::str() const {
  std::string s = "O(" + std::to_string(twist) + ")";
  for (const auto& [idx, power] : idealPowers) {
    s += " * I[p" + std::to_string(idx) + "]";
    if (power != 1) s += "^" + std::to_string(power);
  }
  s += "; R1 = ";
  if (thickenings.empty()) {
    s += "0";
  } else {
    bool first = true;
    for (const auto& [idx, order] : thickenings) {
      if (!first) s += " + ";
      first = false;
      s += "O/I[p" + std::to_string(idx) + "]^" + std::to_string(order);
    }
  }
  return s;
}

Pushforward pushforward_blowup(const PicClass& c, int points) {
  if (points < 1 || points > 6)
    throw std::invalid_argument("pushforward_blowup: points must be in 1..6");
  for (int i = points; i < 6; ++i)
    if (c.b[i] != 0)
      throw std::invalid_argument(
          "pushforward_blowup: nonzero coefficient beyond the blown-up "
          "points");
  Pushforward out;
  out.twist = c.a;
  for (int i = 0; i < points; ++i) {
    if (c.b[i] < 0) out.idealPowers.emplace_back(i + 1, -c.b[i]);
    if (c.b[i] > 2) out.thickenings.emplace_back(i + 1, c.b[i] - 2);
  }
  return out;
}

KeySplitting key_splitting_on_S(const PicClass& D, const PicClass& C,
                                int supportCount) {
  if (genus(C) != 0)
    throw std::invalid_argument("key_splitting_on_S: curve must be rational");
  if (supportCount < 1)
    throw std::invalid_argument(
        "key_splitting_on_S: support count must be >= 1");
  KeySplitting out;
  out.tangent =
      key_restriction_degrees(intersect(pic_H() - D, C), supportCount);
  out.omega = {-out.tangent.quot, -out.tangent.sub};
  if (out.omega.first < out.omega.second)
    std::swap(out.omega.first, out.omega.second);
  return out;
}

KeyRestriction cotangent_restriction(const PicClass& C) {
  if (genus(C) != 0)
    throw std::invalid_argument(
        "cotangent_restriction: curve must be rational");
  int sq = intersect(C, C);
  KeyRestriction r;
  r.sub = -sq;
  r.quot = -2;
  r.forced = sq <= 3;
  return r;
}

bool ConstraintRow::satisfied(const PicClass& m) const {
  int v = intersect(m, curveClass);
  switch (rel) {
    case Rel::LE:
      return v <= bound;
    case Rel::EQ:
      return v == bound;
    case Rel::GE:
      return v >= bound;
  }
  return false;
}

namespace {

const char* rel_str(ConstraintRow::Rel rel) {
  switch (rel) {
    case ConstraintRow::Rel::LE:
      return "<=";
    case ConstraintRow::Rel::EQ:
      return "=";
    case ConstraintRow::Rel::GE:
      return ">=";
  }
  return "?";
}

}  // namespace

std::string ConstraintRow::str() const {
  std::string s = curveClass.str();
  s += " ";
  s += rel_str(rel);
  s += " " + std::to_string(bound);
  if (!provenance.empty()) s += " # " + provenance;
  return s;
}

std::string ConstraintRow::inequality() const {
  // Pairing against the curve class: coefficient of a is curveClass.a, of
  // b_i is -curveClass.b[i].  Flip the whole row when every nonzero
  // coefficient is negative, for readability.
  int ca = curveClass.a;
  std::array<int, 6> cb;
  for (int i = 0; i < 6; ++i) cb[i] = -curveClass.b[i];
  bool anyPositive = ca > 0;
  bool anyNonzero = ca != 0;
  for (int v : cb) {
    anyPositive = anyPositive || v > 0;
    anyNonzero = anyNonzero || v != 0;
  }
  Rel shownRel = rel;
  int shownBound = bound;
  if (anyNonzero && !anyPositive) {
    ca = -ca;
    for (int& v : cb) v = -v;
    shownBound = -shownBound;
    if (shownRel == Rel::LE)
      shownRel = Rel::GE;
    else if (shownRel == Rel::GE)
      shownRel = Rel::LE;
  }
  std::string s;
  append_term(s, ca, "a");
  for (int i = 0; i < 6; ++i) append_term(s, cb[i], "b" + std::to_string(i + 1));
  if (s.empty()) s = "0";
  s += " ";
  s += rel_str(shownRel);
  s += " " + std::to_string(shownBound);
  return s;
}

std::optional<ConstraintRow> parse_constraint_row(const std::string& text) {
  std::string body = text;
  std::string provenance;
  if (auto hash = body.find('#'); hash != std::string::npos) {
    provenance = body.substr(hash + 1);
    body = body.substr(0, hash);
    while (!provenance.empty() && provenance.front() == ' ')
      provenance.erase(provenance.begin());
    while (!provenance.empty() && provenance.back() == ' ')
      provenance.pop_back();
  }
  ConstraintRow row;
  row.provenance = provenance;
  std::size_t pos;
  if ((pos = body.find("<=")) != std::string::npos) {
    row.rel = ConstraintRow::Rel::LE;
  } else if ((pos = body.find(">=")) != std::string::npos) {
    row.rel = ConstraintRow::Rel::GE;
  } else if ((pos = body.find('=')) != std::string::npos) {
    row.rel = ConstraintRow::Rel::EQ;
  } else {
    return std::nullopt;
  }
  std::size_t relLen = row.rel == ConstraintRow::Rel::EQ ? 1 : 2;
  auto cls = parse_pic(body.substr(0, pos));
  if (!cls) return std::nullopt;
  row.curveClass = *cls;
  std::string rhs = body.substr(pos + relLen);
  std::string trimmed;
  for (char ch : rhs)
    if (!std::isspace(static_cast<unsigned char>(ch))) trimmed += ch;
  if (trimmed.empty()) return std::nullopt;
  try {
    std::size_t used = 0;
    row.bound = std::stoi(trimmed, &used);
    if (used != trimmed.size()) return std::nullopt;
  } catch (const std::exception&) {
    return std::nullopt;
  }
  return row;
}

namespace {

/// Restriction bound for a destabilizing sub-line-bundle on the family C:
/// the larger log cotangent splitting degree for the given support count
/// (k = 0 means D and C are disjoint and the plain cotangent pair applies).
int family_bound(const PicClass& D, const PicClass& C, int k) {
  if (k <= 0) {
    KeyRestriction r = cotangent_restriction(C);
    return std::max(r.sub, r.quot);
  }
  return key_splitting_on_S(D, C, k).omega.first;
}

struct ScenarioChoice {
  int hatSupport = 0;  ///< 0 = generic (transverse), else forced count
  int taggedIndex = 0; ///< index named by the tag, 0 for "all"
  std::string tag;
};

ScenarioChoice parse_scenarios(const std::vector<std::string>& scenarios) {
  ScenarioChoice choice;
  for (const std::string& s : scenarios) {
    std::string name = s;
    int index = 0;
    if (auto colon = s.find(':'); colon != std::string::npos) {
      name = s.substr(0, colon);
      std::string idx = s.substr(colon + 1);
      if (idx != "all") {
        try {
          std::size_t used = 0;
          index = std::stoi(idx, &used);
          if (used != idx.size()) throw std::invalid_argument(idx);
        } catch (const std::exception&) {
          throw std::invalid_argument("bad scenario index: " + s);
        }
        if (index < 1 || index > 6)
          throw std::invalid_argument("scenario index out of range: " + s);
      }
    }
    int support = 0;
    if (name == "three-point")
      support = 3;
    else if (name == "two-point")
      support = 2;
    else if (name == "quad-tangent")
      support = 1;
    else
      throw std::invalid_argument("unknown scenario tag: " + s);
    if (choice.hatSupport != 0)
      throw std::invalid_argument("conflicting scenario tags");
    choice.hatSupport = support;
    choice.taggedIndex = index;
    choice.tag = s;
  }
  return choice;
}

}  // namespace

std::vector<ConstraintRow> restriction_table(
    const PicClass& D, const std::vector<std::string>& scenarios) {
  ScenarioChoice choice = parse_scenarios(scenarios);
  std::vector<ConstraintRow> rows;

  auto push = [&](const PicClass& C, int k, std::string tag) {
    ConstraintRow row;
    row.curveClass = C;
    row.rel = ConstraintRow::Rel::LE;
    if (C == D) {
      // Restriction to the boundary member itself: the residue map splits
      // off a trivial quotient, so the sub-line-bundle degree is capped at
      // zero no matter how the other members meet D.
      row.bound = 0;
      row.provenance = std::move(tag) + " (boundary)";
    } else {
      row.bound = family_bound(D, C, k);
      row.provenance =
          std::move(tag) + (k > 0 ? ", k=" + std::to_string(k) : " (disjoint)");
    }
    rows.push_back(std::move(row));
  };

  auto generic = [&](const PicClass& C) { return std::max(intersect(D, C), 0); };

  PicClass Lc = pic_L();
  push(Lc, generic(Lc), "L");
  for (int i = 1; i <= 6; ++i) {
    PicClass C = pic_E(i);
    push(C, generic(C), "E" + std::to_string(i));
  }
  for (int i = 1; i <= 6; ++i) {
    PicClass C = pic_L() - pic_E(i);
    push(C, generic(C), "L-E" + std::to_string(i));
  }

  // The non-generic hat-line scenarios defer the rigid-line and conic-pencil
  // bounds to per-candidate elimination, so those families are dropped.
  if (choice.hatSupport == 0) {
    bool branchConic = D == PicClass{2, {0, 0, 0, 0, 0, 0}};
    for (int i = 1; i <= 6; ++i)
      for (int j = i + 1; j <= 6; ++j) {
        PicClass C = pic_line(i, j);
        // A fixed line can be tangent to the branch conic, so the table for
        // 2L keeps the worst (single-point) support count on this family.
        int k = branchConic ? 1 : generic(C);
        push(C, k, "L" + std::to_string(i) + std::to_string(j));
      }
    for (int i = 1; i <= 6; ++i)
      for (int j = i + 1; j <= 6; ++j)
        for (int k = j + 1; k <= 6; ++k)
          for (int l = k + 1; l <= 6; ++l) {
            PicClass C = 2 * pic_L() - pic_E(i) - pic_E(j) - pic_E(k) - pic_E(l);
            push(C, generic(C),
                 "conic(" + std::to_string(i) + std::to_string(j) +
                     std::to_string(k) + std::to_string(l) + ")");
          }
  }

  for (int i = 1; i <= 6; ++i) {
    PicClass C = pic_hat_line(i);
    int k = choice.hatSupport == 0 ? generic(C) : choice.hatSupport;
    push(C, k, "hat" + std::to_string(i));
    if (choice.hatSupport != 0)
      rows.back().provenance += " (" + choice.tag + ")";
  }
  return rows;
}

CandidateSet destabilizer_search(const PicClass& D,
                                 const std::vector<ConstraintRow>& rows,
                                 int boxLo, int boxHi) {
  if (boxLo > boxHi) throw std::invalid_argument("empty search box");

  CandidateSet out;
  out.boxLo = boxLo;
  out.boxHi = boxHi;
  out.slope = slope_log(D, pic_H());
  out.rows = rows;

  // Internal linear rows over (a, b1..b6).  LE: sum <= rhs, GE: sum >= rhs,
  // EQ: both.  The slope inequality is scaled by the denominator of the
  // threshold so all arithmetic stays integral and exact.
  struct LinRow {
    std::array<long long, 7> c{};
    ConstraintRow::Rel rel = ConstraintRow::Rel::LE;
    long long rhs = 0;
    std::array<long long, 8> minSuffix{};
    std::array<long long, 8> maxSuffix{};
  };
  std::vector<LinRow> lin;
  lin.reserve(rows.size() + 1);

  {
    LinRow slopeRow;
    long long den = static_cast<long long>(out.slope.get_den().get_si());
    long long num = static_cast<long long>(out.slope.get_num().get_si());
    slopeRow.c[0] = 3 * den;
    for (int i = 1; i < 7; ++i) slopeRow.c[i] = den;
    slopeRow.rel = ConstraintRow::Rel::GE;
    slopeRow.rhs = num;
    lin.push_back(slopeRow);
  }
  for (const ConstraintRow& row : rows) {
    LinRow r;
    r.c[0] = row.curveClass.a;
    for (int i = 0; i < 6; ++i) r.c[i + 1] = -row.curveClass.b[i];
    r.rel = row.rel;
    r.rhs = row.bound;
    lin.push_back(r);
  }
  for (LinRow& r : lin) {
    r.minSuffix[7] = r.maxSuffix[7] = 0;
    for (int v = 6; v >= 0; --v) {
      long long lo = r.c[v] * boxLo, hi = r.c[v] * boxHi;
      r.minSuffix[v] = r.minSuffix[v + 1] + std::min(lo, hi);
      r.maxSuffix[v] = r.maxSuffix[v + 1] + std::max(lo, hi);
    }
  }

  std::array<int, 7> x{};
  std::vector<long long> partial(lin.size(), 0);

  auto feasible = [&](int level) {
    for (std::size_t r = 0; r < lin.size(); ++r) {
      const LinRow& row = lin[r];
      long long lo = partial[r] + row.minSuffix[level];
      long long hi = partial[r] + row.maxSuffix[level];
      switch (row.rel) {
        case ConstraintRow::Rel::LE:
          if (lo > row.rhs) return false;
          break;
        case ConstraintRow::Rel::GE:
          if (hi < row.rhs) return false;
          break;
        case ConstraintRow::Rel::EQ:
          if (lo > row.rhs || hi < row.rhs) return false;
          break;
      }
    }
    return true;
  };

  auto dfs = [&](auto&& self, int level) -> void {
    if (level == 7) {
      PicClass c;
      c.a = x[0];
      for (int i = 0; i < 6; ++i) c.b[i] = x[i + 1];
      out.candidates.push_back(c);
      return;
    }
    for (int v = boxLo; v <= boxHi; ++v) {
      x[level] = v;
      for (std::size_t r = 0; r < lin.size(); ++r)
        partial[r] += lin[r].c[level] * v;
      if (feasible(level + 1)) self(self, level + 1);
      for (std::size_t r = 0; r < lin.size(); ++r)
        partial[r] -= lin[r].c[level] * v;
    }
  };
  if (feasible(0)) dfs(dfs, 0);
  return out;
}

PicClass value_class(const PicClass& c) {
  PicClass v = c;
  std::sort(v.b.begin(), v.b.end(), std::greater<int>());
  return v;
}

std::vector<PicClass> value_table(const std::vector<PicClass>& candidates) {
  std::vector<PicClass> vals;
  vals.reserve(candidates.size());
  for (const PicClass& c : candidates) vals.push_back(value_class(c));
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  return vals;
}

PicClass cremona(const PicClass& c) {
  const PicClass images[7] = {
      {2, {-1, -1, -1, 0, 0, 0}},  // L
      {1, {0, -1, -1, 0, 0, 0}},   // E1
      {1, {-1, 0, -1, 0, 0, 0}},   // E2
      {1, {-1, -1, 0, 0, 0, 0}},   // E3
      pic_E(4),
      pic_E(5),
      pic_E(6),
  };
  PicClass out = c.a * images[0];
  for (int i = 0; i < 6; ++i) out = out + c.b[i] * images[i + 1];
  return out;
}

std::string MemberClass::str() const {
  switch (kind) {
    case Kind::TwistedCubic:
      return "twisted-cubic";
    case Kind::ConicPlusLine:
      return "conic+line(" + std::to_string(i) + ")";
    case Kind::ThreeLines:
      return "three-lines(" + std::to_string(i) + "," + std::to_string(j) + ")";
  }
  return "?";
}

MemberClass classify_pencil_member(const LineP2& line,
                                   const std::vector<PointP2>& z) {
  PositionReport pos = general_position(z);
  if (!pos.general)
    throw std::invalid_argument("points not in general position: " +
                                pos.witness);
  std::vector<int> hits;
  for (std::size_t i = 0; i < z.size(); ++i)
    if (line.contains(z[i])) hits.push_back(static_cast<int>(i) + 1);
  MemberClass m;
  if (hits.empty()) {
    m.kind = MemberClass::Kind::TwistedCubic;
  } else if (hits.size() == 1) {
    m.kind = MemberClass::Kind::ConicPlusLine;
    m.i = hits[0];
  } else if (hits.size() == 2) {
    m.kind = MemberClass::Kind::ThreeLines;
    m.i = hits[0];
    m.j = hits[1];
  } else {
    throw std::invalid_argument(
        "line meets three or more of the blown-up points");
  }
  return m;
}

PositionReport general_position(const std::vector<PointP2>& z) {
  if (z.size() != 6)
    throw std::invalid_argument("general_position expects six points");
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = i + 1; j < 6; ++j)
      if (z[i] == z[j])
        return {false, "points " + std::to_string(i + 1) + " and " +
                           std::to_string(j + 1) + " coincide"};
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = i + 1; j < 6; ++j)
      for (std::size_t k = j + 1; k < 6; ++k) {
        MatrixQ m(3, 3);
        const PointP2* pts[3] = {&z[i], &z[j], &z[k]};
        for (int r = 0; r < 3; ++r)
          for (int c = 0; c < 3; ++c)
            m.at(r, c) = Rational(pts[r]->coords()[c]);
        if (m.det() == 0)
          return {false, "points " + std::to_string(i + 1) + ", " +
                             std::to_string(j + 1) + ", " +
                             std::to_string(k + 1) + " collinear"};
      }
  MatrixQ v(6, 6);
  std::vector<Mono> monos = monomials_of_degree(2);
  for (int r = 0; r < 6; ++r) {
    const auto& c = z[r].coords();
    for (int m = 0; m < 6; ++m) {
      Rational val(1);
      for (int var = 0; var < 3; ++var)
        for (int e = 0; e < monos[m].e[var]; ++e) val *= Rational(c[var]);
      v.at(r, m) = val;
    }
  }
  if (v.det() == 0) return {false, "all six points lie on a conic"};
  return {true, "general position"};
}

}  // namespace logtangent
