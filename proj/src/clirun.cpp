#include "logtangent/clirun.hpp"

#include <climits>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "logtangent/binary.hpp"
#include "logtangent/blowup.hpp"
#include "logtangent/forms.hpp"
#include "logtangent/graded.hpp"
#include "logtangent/planelog.hpp"

namespace logtangent {

namespace {

using nlohmann::json;

/// Shared flags; identical config + inputs give byte-identical output.
struct RunConfig {
  std::uint64_t seed = 0;
  std::string format = "text";
  bool certify = false;
  std::string degreeWindow;  ///< "lo:hi", empty = library default
  std::string box = "-8:8";
  std::vector<std::string> scenarios;

  bool is_json() const { return format == "json"; }
};

json json_root(const std::string& command) {
  json j;
  j["schema"] = "logtangent/1";
  j["command"] = command;
  return j;
}

[[noreturn]] void usage_fail(const std::string& opt, const std::string& msg) {
  throw CLI::ValidationError(opt, msg);
}

Form need_form(const std::string& opt, const std::string& text) {
  auto f = parse_form(text);
  if (!f) usage_fail(opt, "cannot parse form '" + text + "'");
  return *f;
}

PointP2 need_point(const std::string& opt, const std::string& text) {
  auto p = parse_point(text);
  if (!p) usage_fail(opt, "cannot parse point '" + text + "' (use [x:y:z])");
  return *p;
}

LineP2 need_line(const std::string& opt, const std::string& text) {
  auto l = parse_line(text);
  if (!l) usage_fail(opt, "cannot parse line '" + text + "' (use [a:b:c])");
  return *l;
}

PicClass need_pic(const std::string& opt, const std::string& text) {
  auto c = parse_pic(text);
  if (!c)
    usage_fail(opt, "cannot parse class '" + text + "' (use (a;b1,..,b6))");
  return *c;
}

std::pair<int, int> need_range(const std::string& opt,
                               const std::string& text) {
  auto colon = text.find(':', 1);  // skip a leading minus sign
  if (colon != std::string::npos && colon + 1 < text.size()) {
    try {
      std::size_t usedLo = 0, usedHi = 0;
      int lo = std::stoi(text.substr(0, colon), &usedLo);
      int hi = std::stoi(text.substr(colon + 1), &usedHi);
      if (usedLo == colon && usedHi == text.size() - colon - 1)
        return {lo, hi};
    } catch (const std::exception&) {
    }
  }
  usage_fail(opt, "expected lo:hi, got '" + text + "'");
}

Rational need_rational(const std::string& opt, const std::string& text) {
  try {
    auto slash = text.find('/');
    if (slash == std::string::npos) {
      std::size_t used = 0;
      long v = std::stol(text, &used);
      if (used == text.size()) return Rational(v);
    } else {
      std::size_t un = 0, ud = 0;
      long num = std::stol(text.substr(0, slash), &un);
      long den = std::stol(text.substr(slash + 1), &ud);
      if (un == slash && ud == text.size() - slash - 1 && den != 0) {
        Rational r(num, den);
        r.canonicalize();
        return r;
      }
    }
  } catch (const std::exception&) {
  }
  usage_fail(opt, "cannot parse rational '" + text + "' (use p or p/q)");
}

std::vector<PointP2> need_points(const std::string& opt,
                                 const std::vector<std::string>& texts) {
  std::vector<PointP2> pts;
  pts.reserve(texts.size());
  for (const std::string& t : texts) pts.push_back(need_point(opt, t));
  return pts;
}

std::vector<LineP2> need_lines(const std::string& opt,
                               const std::vector<std::string>& texts) {
  std::vector<LineP2> out;
  out.reserve(texts.size());
  for (const std::string& t : texts) out.push_back(need_line(opt, t));
  return out;
}

std::string yesno(bool b) { return b ? "yes" : "no"; }

std::string pair_str(const std::pair<int, int>& p) {
  return "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")";
}

// --------------------------------------------------------------------------
// Presentation files.  A file holds serialize_presentation output optionally
// followed by "verify:" trailer lines recording expected restriction data;
// the trailer is stripped before parsing and consulted by --certify.
// --------------------------------------------------------------------------

struct VerifyEntry {
  std::string kind;  ///< "rank", "chern", "normalized-c1", "splitting", ...
  std::vector<std::string> tokens;
};

struct PresentationFile {
  GradedPresentation pres;
  std::vector<VerifyEntry> verify;
};

std::vector<VerifyEntry> split_verify(std::string& text) {
  std::istringstream is(text);
  std::string line, body;
  std::vector<VerifyEntry> entries;
  while (std::getline(is, line)) {
    if (line.rfind("verify:", 0) == 0) {
      std::istringstream ls(line.substr(7));
      VerifyEntry e;
      ls >> e.kind;
      std::string tok;
      while (ls >> tok) e.tokens.push_back(tok);
      entries.push_back(std::move(e));
    } else {
      body += line;
      body += "\n";
    }
  }
  text = std::move(body);
  return entries;
}

PresentationFile load_presentation(const std::string& opt,
                                   const std::string& path) {
  std::ifstream in(path);
  if (!in) usage_fail(opt, "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  PresentationFile file;
  file.verify = split_verify(text);
  auto p = parse_presentation(text);
  if (!p) usage_fail(opt, "'" + path + "' is not a presentation file");
  file.pres = *p;
  return file;
}

/// Looks up the verify entry of the given kind whose first token parses to
/// `line`; throws std::runtime_error (exit 4) when --certify has nothing to
/// check against.
const VerifyEntry* find_line_entry(const std::vector<VerifyEntry>& entries,
                                   const std::string& kind,
                                   const LineP2& line) {
  for (const VerifyEntry& e : entries) {
    if (e.kind != kind || e.tokens.empty()) continue;
    auto l = parse_line(e.tokens[0]);
    if (l && *l == line) return &e;
  }
  return nullptr;
}

// --------------------------------------------------------------------------
// Command implementations.  Each fills `out` (text mode) or a json object.
// --------------------------------------------------------------------------

struct Output {
  const RunConfig& cfg;
  std::string text;
  json j;

  explicit Output(const RunConfig& c, const std::string& command)
      : cfg(c), j(json_root(command)) {}

  void line(const std::string& s) {
    text += s;
    text += "\n";
  }
  std::string finish() const {
    if (cfg.is_json()) return j.dump(2) + "\n";
    return text;
  }
};

void emit_presentation_summary(Output& o, const GradedPresentation& p,
                               bool consistent) {
  if (o.cfg.is_json()) {
    o.j["label"] = p.label;
    o.j["rank"] = p.rank;
    o.j["chern"] = {p.chern.c1, p.chern.c2};
    o.j["consistent"] = consistent;
    return;
  }
  o.line("label: " + p.label);
  o.line("rank: " + std::to_string(p.rank));
  o.line("chern: " + p.chern.str());
  o.line("chi-consistent: " + yesno(consistent));
}

void cmd_chern(Output& o, const std::string& curveText,
               const std::vector<std::string>& lineTexts) {
  if (!curveText.empty() && !lineTexts.empty())
    usage_fail("chern", "give either --curve or --line, not both");
  if (curveText.empty() && lineTexts.empty())
    usage_fail("chern", "need --curve or --line");
  GradedPresentation p;
  if (!curveText.empty()) {
    PlaneCurve c = make_plane_curve(need_form("--curve", curveText));
    p = logtangent_presentation(c);
  } else {
    Arrangement a = make_arrangement(need_lines("--line", lineTexts));
    p = arrangement_presentation(a);
    ChernPair byCount = arrangement_chern(a);
    if (!(byCount == p.chern))
      throw std::runtime_error(
          "chern mismatch between presentation and incidence count: " +
          p.chern.str() + " vs " + byCount.str());
    if (o.cfg.is_json()) {
      o.j["lines"] = lineTexts.size();
      o.j["maxMultiplicity"] = arrangement_multiplicity(a);
    } else {
      o.line("lines: " + std::to_string(lineTexts.size()));
      o.line("max-multiplicity: " + std::to_string(arrangement_multiplicity(a)));
    }
  }
  bool consistent = chi_consistent(p);
  emit_presentation_summary(o, p, consistent);
  if (!consistent)
    throw std::runtime_error("Euler characteristic check failed for " +
                             p.label);
}

/// Loads the presentation for the splitting / jumping-test commands from
/// --curve or --presentation (exactly one).
PresentationFile load_input_presentation(const std::string& curveText,
                                         const std::string& presPath) {
  if (!curveText.empty() && !presPath.empty())
    usage_fail("splitting", "give either --curve or --presentation");
  if (curveText.empty() && presPath.empty())
    usage_fail("splitting", "need --curve or --presentation");
  if (!presPath.empty()) return load_presentation("--presentation", presPath);
  PresentationFile file;
  file.pres =
      logtangent_presentation(make_plane_curve(need_form("--curve", curveText)));
  return file;
}

void cmd_splitting(Output& o, const std::string& curveText,
                   const std::string& presPath, const std::string& lineText) {
  PresentationFile file = load_input_presentation(curveText, presPath);
  LineP2 line = need_line("--line", lineText);
  SplittingType s = restricted_splitting(file.pres, line);

  std::optional<bool> certified;
  if (o.cfg.certify) {
    const VerifyEntry* e = find_line_entry(file.verify, "splitting", line);
    if (!e || e->tokens.size() < 2)
      throw std::runtime_error("no embedded splitting record for line " +
                               line.str());
    if (e->tokens[1] != s.str())
      throw std::runtime_error("splitting mismatch on " + line.str() +
                               ": computed " + s.str() + ", recorded " +
                               e->tokens[1]);
    certified = true;
  }

  std::optional<CokerProfile> profile;
  if (!o.cfg.degreeWindow.empty()) {
    auto window = need_range("--degree-window", o.cfg.degreeWindow);
    profile = coker_profile(restrict_presentation(file.pres, line), window);
  }

  if (o.cfg.is_json()) {
    o.j["label"] = file.pres.label;
    o.j["line"] = line.str();
    o.j["splitting"] = {{"degrees", s.degrees}, {"torsion", s.torsion}};
    if (certified) o.j["certified"] = *certified;
    if (profile) {
      json rows = json::array();
      for (const auto& r : profile->table)
        rows.push_back({{"t", r.t}, {"module", r.hs}, {"h1", r.hv}});
      o.j["profile"] = rows;
    }
    return;
  }
  o.line("label: " + file.pres.label);
  o.line("line: " + line.str());
  o.line("splitting: " + s.str());
  if (certified) o.line("certified: " + yesno(*certified));
  if (profile) {
    o.line("profile:");
    for (const auto& r : profile->table)
      o.line("t=" + std::to_string(r.t) + " module=" + std::to_string(r.hs) +
             " h1=" + std::to_string(r.hv));
  }
}

void cmd_jumping_test(Output& o, const std::string& curveText,
                      const std::string& presPath,
                      const std::string& lineText) {
  PresentationFile file = load_input_presentation(curveText, presPath);
  LineP2 line = need_line("--line", lineText);
  int c1n = normalized_c1(file.pres);
  JumpingVerdict v = jumping_test(file.pres, c1n, line);

  std::optional<bool> certified;
  if (o.cfg.certify) {
    const VerifyEntry* e = find_line_entry(file.verify, "jumping", line);
    if (!e || e->tokens.size() < 3)
      throw std::runtime_error("no embedded jumping record for line " +
                               line.str());
    bool wantJump = e->tokens[1] == "yes";
    int wantOrder = std::stoi(e->tokens[2]);
    if (wantJump != v.jumping || wantOrder != v.order)
      throw std::runtime_error(
          "jumping mismatch on " + line.str() + ": computed " +
          yesno(v.jumping) + " " + std::to_string(v.order) + ", recorded " +
          e->tokens[1] + " " + e->tokens[2]);
    certified = true;
  }

  if (o.cfg.is_json()) {
    o.j["label"] = file.pres.label;
    o.j["line"] = line.str();
    o.j["normalizedC1"] = c1n;
    o.j["jumping"] = v.jumping;
    o.j["order"] = v.order;
    if (certified) o.j["certified"] = *certified;
    return;
  }
  o.line("label: " + file.pres.label);
  o.line("line: " + line.str());
  o.line("normalized-c1: " + std::to_string(c1n));
  o.line("jumping: " + yesno(v.jumping));
  o.line("order: " + std::to_string(v.order));
  if (certified) o.line("certified: " + yesno(*certified));
}

void cmd_jumping_curve(Output& o, const std::string& cubicText,
                       const std::string& testLineText) {
  PlaneCurve cubic = make_plane_curve(need_form("--cubic", cubicText));
  Form jc = jumping_curve_cubic(cubic);
  std::string dual = alpha_str(jc);
  if (o.cfg.is_json()) {
    o.j["dualCurve"] = dual;
    if (!testLineText.empty()) {
      LineP2 l = need_line("--test-line", testLineText);
      o.j["testLine"] = l.str();
      o.j["vertexLine"] = triangle_vertex_test(cubic, l);
    }
    return;
  }
  if (testLineText.empty()) {
    o.line(dual);
    return;
  }
  LineP2 l = need_line("--test-line", testLineText);
  o.line("dual-curve: " + dual);
  o.line("vertex-line " + l.str() + ": " +
         yesno(triangle_vertex_test(cubic, l)));
}

void cmd_jumping_set(Output& o, const std::string& conicText,
                     const std::vector<std::string>& pointTexts,
                     int negatives) {
  PointedCurve qz = make_pointed_curve(need_form("--conic", conicText),
                                       need_points("--point", pointTexts));
  JumpingReport rep =
      jumping_set_pointed_conic(qz, negatives, o.cfg.seed, o.cfg.certify);
  if (o.cfg.is_json()) {
    o.j["points"] = pointTexts.size();
    o.j["tested"] = rep.tested.size();
    json lines = json::array();
    for (const LineP2& l : rep.certified) lines.push_back(l.str());
    o.j["jumping"] = lines;
    o.j["dualCurve"] = rep.dualCurve ? alpha_str(*rep.dualCurve) : "none";
    if (o.cfg.certify) o.j["certificates"] = rep.certificates;
    return;
  }
  o.line("points: " + std::to_string(pointTexts.size()));
  o.line("tested: " + std::to_string(rep.tested.size()));
  o.line("jumping (" + std::to_string(rep.certified.size()) + "):");
  for (const LineP2& l : rep.certified) o.line(l.str());
  o.line("dual-curve: " +
         (rep.dualCurve ? alpha_str(*rep.dualCurve) : std::string("none")));
  if (o.cfg.certify) {
    o.line("certificates (" + std::to_string(rep.certificates.size()) + "):");
    for (const std::string& c : rep.certificates) o.line(c);
  }
}

void cmd_freeness(Output& o, const std::vector<std::string>& lineTexts) {
  Arrangement a = make_arrangement(need_lines("--line", lineTexts));
  FreenessVerdict v = freeness_certificate(a);
  ChernPair chern = arrangement_chern(a);
  if (o.cfg.is_json()) {
    o.j["lines"] = lineTexts.size();
    o.j["maxMultiplicity"] = arrangement_multiplicity(a);
    o.j["free"] = v.free;
    o.j["exponents"] = {v.exponents.first, v.exponents.second};
    o.j["note"] = v.note;
    o.j["chern"] = {chern.c1, chern.c2};
    return;
  }
  o.line("lines: " + std::to_string(lineTexts.size()));
  o.line("max-multiplicity: " + std::to_string(arrangement_multiplicity(a)));
  o.line("free: " + yesno(v.free));
  o.line("exponents: " + pair_str(v.exponents));
  if (!v.note.empty()) o.line("note: " + v.note);
  o.line("chern: " + chern.str());
}

/// Builds the steiner output: serialized presentation plus a "verify:"
/// trailer recording rank, Chern pair, the jumping verdicts on all secants
/// and polar tangent lines of the marked points, and the splitting on one
/// deterministic control line.
std::string steiner_payload(const PointedCurve& qz,
                            const GradedPresentation& p) {
  std::ostringstream os;
  os << serialize_presentation(p);
  os << "verify: rank " << p.rank << "\n";
  os << "verify: chern " << p.chern.c1 << " " << p.chern.c2 << "\n";
  int c1n = normalized_c1(p);
  os << "verify: normalized-c1 " << c1n << "\n";

  std::vector<LineP2> probes;
  const auto& pts = qz.points;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      probes.push_back(line_through(pts[i], pts[j]));
  for (const PointP2& pt : pts)
    probes.push_back(tangent_line(qz.curve.f, pt));
  for (const LineP2& l : probes) {
    JumpingVerdict v = jumping_test(p, c1n, l);
    os << "verify: jumping " << l.str() << " " << (v.jumping ? "yes" : "no")
       << " " << v.order << "\n";
  }

  // First line from a fixed pool that is neither a probe nor jumping.
  const int pool[][3] = {{1, 2, 5}, {1, 3, 7}, {2, 3, 5}, {3, 1, 9},
                         {5, 2, 1}, {7, 4, 3}, {1, 1, 2}};
  for (const auto& c : pool) {
    LineP2 l{Rational(c[0]), Rational(c[1]), Rational(c[2])};
    bool isProbe = false;
    for (const LineP2& q : probes) isProbe = isProbe || q == l;
    if (isProbe) continue;
    JumpingVerdict v = jumping_test(p, c1n, l);
    if (v.jumping) continue;
    os << "verify: splitting " << l.str() << " "
       << restricted_splitting(p, l).str() << "\n";
    os << "verify: jumping " << l.str() << " no 0\n";
    break;
  }
  return os.str();
}

void cmd_steiner(Output& o, const std::string& conicText,
                 const std::vector<std::string>& pointTexts,
                 const std::string& outPath) {
  PointedCurve qz = make_pointed_curve(need_form("--conic", conicText),
                                       need_points("--point", pointTexts));
  GradedPresentation p = steiner_conic_points(qz);
  if (!chi_consistent(p))
    throw std::runtime_error("Euler characteristic check failed for " +
                             p.label);
  std::string payload = steiner_payload(qz, p);
  if (!outPath.empty()) {
    std::ofstream out(outPath);
    if (!out) usage_fail("--out", "cannot write '" + outPath + "'");
    out << payload;
  }
  if (o.cfg.is_json()) {
    o.j["label"] = p.label;
    o.j["rank"] = p.rank;
    o.j["chern"] = {p.chern.c1, p.chern.c2};
    o.j["payload"] = payload;
    if (!outPath.empty()) o.j["out"] = outPath;
    return;
  }
  o.text += payload;
}

void cmd_nbar_matrix(Output& o, const std::string& paramText) {
  Rational a = need_rational("--param", paramText);
  GradedPresentation p = cubic_point_matrix();
  std::string report = nbar_report(a);
  if (o.cfg.is_json()) {
    o.j["label"] = p.label;
    o.j["presentation"] = serialize_presentation(p);
    o.j["param"] = paramText;
    o.j["report"] = report;
    return;
  }
  o.text += serialize_presentation(p);
  o.line("param: " + paramText);
  o.line("report:");
  o.text += report;
  if (!report.empty() && report.back() != '\n') o.text += "\n";
}

void cmd_syzygy(Output& o, const std::vector<std::string>& formTexts,
                int dmax) {
  std::vector<Form> row;
  row.reserve(formTexts.size());
  for (const std::string& t : formTexts)
    row.push_back(need_form("--form", t));
  SyzygyBasis basis =
      dmax == INT_MIN ? syzygies_default(row) : syzygies_up_to(row, dmax);
  auto col_str = [](const SyzygyColumn& c) {
    std::string s;
    for (std::size_t k = 0; k < c.entries.size(); ++k) {
      if (k) s += " | ";
      s += c.entries[k].is_zero() ? "0" : c.entries[k].str();
    }
    return s;
  };
  if (o.cfg.is_json()) {
    o.j["inputs"] = formTexts.size();
    o.j["degrees"] = basis.input_degrees;
    json gens = json::array();
    for (const SyzygyColumn& c : basis.generators)
      gens.push_back({{"degree", c.total_degree}, {"column", col_str(c)}});
    o.j["generators"] = gens;
    return;
  }
  o.line("inputs: " + std::to_string(formTexts.size()));
  std::string degs;
  for (std::size_t i = 0; i < basis.input_degrees.size(); ++i)
    degs += (i ? " " : "") + std::to_string(basis.input_degrees[i]);
  o.line("degrees: " + degs);
  o.line("generators: " + std::to_string(basis.generators.size()));
  for (std::size_t i = 0; i < basis.generators.size(); ++i)
    o.line("gen " + std::to_string(i + 1) + " (degree " +
           std::to_string(basis.generators[i].total_degree) +
           "): " + col_str(basis.generators[i]));
}

void cmd_pic(Output& o, const std::string& classText,
             const std::string& withText) {
  PicClass c = need_pic("--class", classText);
  std::optional<PicClass> other;
  if (!withText.empty()) other = need_pic("--with", withText);
  Rational slope = slope_log(c, pic_H());
  if (o.cfg.is_json()) {
    o.j["class"] = c.str();
    o.j["verbose"] = c.verbose();
    o.j["selfIntersection"] = intersect(c, c);
    o.j["genus"] = genus(c);
    o.j["degree"] = intersect(c, pic_H());
    o.j["kPairing"] = intersect(c, pic_K());
    o.j["logSlope"] = slope.get_str();
    if (other) {
      o.j["with"] = other->str();
      o.j["pairing"] = intersect(c, *other);
    }
    return;
  }
  o.line("class: " + c.str());
  o.line("verbose: " + c.verbose());
  o.line("self-intersection: " + std::to_string(intersect(c, c)));
  o.line("genus: " + std::to_string(genus(c)));
  o.line("degree: " + std::to_string(intersect(c, pic_H())));
  o.line("k-pairing: " + std::to_string(intersect(c, pic_K())));
  o.line("log-slope: " + slope.get_str());
  if (other) {
    o.line("with: " + other->str());
    o.line("pairing: " + std::to_string(intersect(c, *other)));
  }
}

void cmd_lines27(Output& o) {
  std::vector<PicClass> lines = lines27();
  if (o.cfg.is_json()) {
    o.j["count"] = lines.size();
    json arr = json::array();
    for (const PicClass& c : lines)
      arr.push_back({{"class", c.str()}, {"verbose", c.verbose()}});
    o.j["lines"] = arr;
    return;
  }
  for (const PicClass& c : lines) o.line(c.str() + "  " + c.verbose());
}

void cmd_pushforward(Output& o, const std::string& divisorText, int points) {
  PicClass c = need_pic("--divisor", divisorText);
  Pushforward pf = pushforward_blowup(c, points);
  if (o.cfg.is_json()) {
    o.j["divisor"] = c.str();
    o.j["points"] = points;
    o.j["twist"] = pf.twist;
    json ip = json::array(), th = json::array();
    for (const auto& [i, p] : pf.idealPowers) ip.push_back({i, p});
    for (const auto& [i, p] : pf.thickenings) th.push_back({i, p});
    o.j["idealPowers"] = ip;
    o.j["thickenings"] = th;
    o.j["display"] = pf.str();
    return;
  }
  o.line("divisor: " + c.str());
  o.line("points: " + std::to_string(points));
  o.line("pushforward: " + pf.str());
}

void cmd_keylemma(Output& o, const std::string& divisorText,
                  const std::string& curveText, int support) {
  PicClass D = need_pic("--divisor", divisorText);
  PicClass C = need_pic("--curve", curveText);
  if (support == INT_MIN) support = std::max(intersect(D, C), 0);

  std::pair<int, int> tangent, omega;
  bool forced = false;
  if (support == 0) {
    KeyRestriction r = cotangent_restriction(C);
    omega = {std::max(r.sub, r.quot), std::min(r.sub, r.quot)};
    tangent = {-omega.second, -omega.first};
    forced = r.forced;
  } else {
    KeySplitting ks = key_splitting_on_S(D, C, support);
    tangent = {ks.tangent.sub, ks.tangent.quot};
    omega = ks.omega;
    forced = ks.tangent.forced;
  }
  if (o.cfg.is_json()) {
    o.j["divisor"] = D.str();
    o.j["curve"] = C.str();
    o.j["support"] = support;
    o.j["tangent"] = {tangent.first, tangent.second};
    o.j["omega"] = {omega.first, omega.second};
    o.j["forced"] = forced;
    return;
  }
  o.line("divisor: " + D.str());
  o.line("curve: " + C.str() + "  " + C.verbose());
  o.line("support: " + std::to_string(support) +
         (support == 0 ? " (disjoint)" : ""));
  o.line("tangent: " + pair_str(tangent));
  o.line("omega: " + pair_str(omega));
  o.line("forced: " + yesno(forced));
}

void cmd_destabilizers(Output& o, const std::string& divisorText) {
  PicClass D = need_pic("--divisor", divisorText);
  std::vector<ConstraintRow> rows;
  try {
    rows = restriction_table(D, o.cfg.scenarios);
  } catch (const std::invalid_argument& e) {
    usage_fail("--scenario", e.what());
  }
  auto box = need_range("--box", o.cfg.box);
  CandidateSet set;
  try {
    set = destabilizer_search(D, rows, box.first, box.second);
  } catch (const std::invalid_argument& e) {
    usage_fail("--box", e.what());
  }
  std::vector<PicClass> values = value_table(set.candidates);
  if (o.cfg.is_json()) {
    o.j["divisor"] = D.str();
    o.j["scenarios"] = o.cfg.scenarios;
    o.j["slope"] = set.slope.get_str();
    o.j["box"] = {box.first, box.second};
    json rj = json::array();
    for (const ConstraintRow& r : set.rows)
      rj.push_back({{"row", r.str()}, {"inequality", r.inequality()}});
    o.j["rows"] = rj;
    json cj = json::array();
    for (const PicClass& c : set.candidates) cj.push_back(c.str());
    o.j["candidates"] = cj;
    json vj = json::array();
    for (const PicClass& v : values) vj.push_back(v.str());
    o.j["values"] = vj;
    return;
  }
  o.line("divisor: " + D.str());
  for (const std::string& s : o.cfg.scenarios) o.line("scenario: " + s);
  o.line("slope: " + set.slope.get_str());
  o.line("box: [" + std::to_string(box.first) + "," +
         std::to_string(box.second) + "]");
  o.line("rows: " + std::to_string(set.rows.size()));
  o.line("candidates: " + std::to_string(set.candidates.size()));
  o.line("values (" + std::to_string(values.size()) + "):");
  for (const PicClass& v : values) o.line(v.str());
}

void cmd_classify_member(Output& o, const std::string& lineText,
                         const std::vector<std::string>& pointTexts) {
  LineP2 line = need_line("--line", lineText);
  std::vector<PointP2> z = need_points("--point", pointTexts);
  MemberClass m = classify_pencil_member(line, z);
  if (o.cfg.is_json()) {
    o.j["line"] = line.str();
    o.j["member"] = m.str();
    return;
  }
  o.line("member: " + m.str());
}

void cmd_general_position(Output& o,
                          const std::vector<std::string>& pointTexts) {
  std::vector<PointP2> z = need_points("--point", pointTexts);
  PositionReport rep = general_position(z);
  if (o.cfg.is_json()) {
    o.j["general"] = rep.general;
    o.j["witness"] = rep.witness;
    return;
  }
  o.line("general: " + yesno(rep.general));
  o.line("witness: " + rep.witness);
}

}  // namespace

CliResult run_cli(const std::vector<std::string>& args) {
  CliResult res;
  RunConfig cfg;

  CLI::App app{
      "Exact-arithmetic toolkit for logarithmic tangent sheaves of plane "
      "curves and the Picard calculus of the six-point blowup."};
  app.name("logtangent");
  app.require_subcommand(1);
  app.add_option("--seed", cfg.seed, "PRNG seed for sampled panels");
  app.add_option("--format", cfg.format, "output format")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--certify", cfg.certify,
               "verify against embedded records / emit certificates");
  app.add_option("--degree-window", cfg.degreeWindow,
                 "lo:hi twist window for cohomology profiles");
  app.add_option("--box", cfg.box, "lo:hi coordinate box for lattice search");
  app.add_option("--scenario", cfg.scenarios,
                 "non-generic tangency scenario tag (repeatable)")
      ->allow_extra_args(false);

  std::string curveText, cubicText, conicText, presPath, lineText, outPath;
  std::string classText, withText, divisorText, paramText = "1";
  std::vector<std::string> lineTexts, pointTexts, formTexts;
  int negatives = 25, points = 6, support = INT_MIN, dmax = INT_MIN;

  std::string pending;  // which command ran
  auto reg = [&](CLI::App* sub, const char* name) {
    sub->fallthrough();
    sub->callback([&pending, name] { pending = name; });
    return sub;
  };

  {
    auto* c = reg(app.add_subcommand(
                      "chern", "Chern pair of a log tangent sheaf"),
                  "chern");
    c->add_option("--curve", curveText, "plane curve equation");
    c->add_option("--line", lineTexts, "arrangement line [a:b:c]")->allow_extra_args(false);
  }
  {
    auto* c = reg(app.add_subcommand(
                      "splitting", "splitting type on a line"),
                  "splitting");
    c->add_option("--curve", curveText, "plane curve equation");
    c->add_option("--presentation", presPath, "presentation file");
    c->add_option("--line", lineText, "restriction line [a:b:c]")->required();
  }
  {
    auto* c = reg(app.add_subcommand(
                      "jumping-test", "test one line for jumping"),
                  "jumping-test");
    c->add_option("--curve", curveText, "plane curve equation");
    c->add_option("--presentation", presPath, "presentation file");
    c->add_option("--line", lineText, "candidate line [a:b:c]")->required();
  }
  {
    auto* c = reg(app.add_subcommand(
                      "jumping-curve", "dual curve of jumping lines"),
                  "jumping-curve");
    c->add_option("--cubic", cubicText, "smooth cubic equation")->required();
    c->add_option("--test-line", lineText, "also run the vertex test");
  }
  {
    auto* c = reg(app.add_subcommand(
                      "jumping-set", "jumping lines of a pointed conic"),
                  "jumping-set");
    c->add_option("--conic", conicText, "smooth conic equation")->required();
    c->add_option("--point", pointTexts, "marked point [x:y:z]")->required()->allow_extra_args(false);
    c->add_option("--negatives", negatives, "seeded control lines");
  }
  {
    auto* c = reg(app.add_subcommand(
                      "freeness", "freeness certificate of an arrangement"),
                  "freeness");
    c->add_option("--line", lineTexts, "arrangement line [a:b:c]")->required()->allow_extra_args(false);
  }
  {
    auto* c = reg(app.add_subcommand(
                      "steiner", "presentation of a pointed-conic sheaf"),
                  "steiner");
    c->add_option("--conic", conicText, "smooth conic equation")->required();
    c->add_option("--point", pointTexts, "marked point [x:y:z]")->required()->allow_extra_args(false);
    c->add_option("--out", outPath, "also write the payload to a file");
  }
  {
    auto* c = reg(app.add_subcommand(
                      "nbar-matrix", "reference pointed-cubic matrix"),
                  "nbar-matrix");
    c->add_option("--param", paramText, "family parameter (rational)");
  }
  {
    auto* c = reg(app.add_subcommand(
                      "syzygy", "syzygy generators of a form row"),
                  "syzygy");
    c->add_option("--form", formTexts, "row entry")->required()->allow_extra_args(false);
    c->add_option("--dmax", dmax, "degree cutoff");
  }
  {
    auto* c = reg(app.add_subcommand(
                      "pic", "lattice data of a divisor class"),
                  "pic");
    c->add_option("--class", classText, "class (a;b1,..,b6)")->required();
    c->add_option("--with", withText, "second class for the pairing");
  }
  reg(app.add_subcommand("lines27", "the 27 line classes"), "lines27");
  {
    auto* c = reg(app.add_subcommand(
                      "pushforward", "direct image under the blow-down"),
                  "pushforward");
    c->add_option("--divisor", divisorText, "class (a;b1,..,b6)")->required();
    c->add_option("--points", points, "number of blown-up points");
  }
  {
    auto* c = reg(app.add_subcommand(
                      "keylemma", "restricted log splitting on the surface"),
                  "keylemma");
    c->add_option("--divisor", divisorText, "boundary class")->required();
    c->add_option("--curve", classText, "rational curve class")->required();
    c->add_option("--support", support, "support count (default D.C)");
  }
  {
    auto* c = reg(app.add_subcommand(
                      "destabilizers", "exhaustive destabilizer candidates"),
                  "destabilizers");
    c->add_option("--divisor", divisorText, "boundary class")->required();
  }
  {
    auto* c = reg(app.add_subcommand(
                      "classify-member", "pencil member type by incidence"),
                  "classify-member");
    c->add_option("--line", lineText, "plane line [a:b:c]")->required();
    c->add_option("--point", pointTexts, "blown-up point [x:y:z]")->required()->allow_extra_args(false);
  }
  {
    auto* c = reg(app.add_subcommand(
                      "general-position", "test six points"),
                  "general-position");
    c->add_option("--point", pointTexts, "point [x:y:z]")->required()->allow_extra_args(false);
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream out, err;
    int rc = app.exit(e, out, err);
    res.out = out.str();
    res.err = err.str();
    res.code = rc == 0 ? 0 : 2;
    return res;
  }

  Output o(cfg, pending);
  try {
    if (pending == "chern")
      cmd_chern(o, curveText, lineTexts);
    else if (pending == "splitting")
      cmd_splitting(o, curveText, presPath, lineText);
    else if (pending == "jumping-test")
      cmd_jumping_test(o, curveText, presPath, lineText);
    else if (pending == "jumping-curve")
      cmd_jumping_curve(o, cubicText, lineText);
    else if (pending == "jumping-set")
      cmd_jumping_set(o, conicText, pointTexts, negatives);
    else if (pending == "freeness")
      cmd_freeness(o, lineTexts);
    else if (pending == "steiner")
      cmd_steiner(o, conicText, pointTexts, outPath);
    else if (pending == "nbar-matrix")
      cmd_nbar_matrix(o, paramText);
    else if (pending == "syzygy")
      cmd_syzygy(o, formTexts, dmax);
    else if (pending == "pic")
      cmd_pic(o, classText, withText);
    else if (pending == "lines27")
      cmd_lines27(o);
    else if (pending == "pushforward")
      cmd_pushforward(o, divisorText, points);
    else if (pending == "keylemma")
      cmd_keylemma(o, divisorText, classText, support);
    else if (pending == "destabilizers")
      cmd_destabilizers(o, divisorText);
    else if (pending == "classify-member")
      cmd_classify_member(o, lineText, pointTexts);
    else if (pending == "general-position")
      cmd_general_position(o, pointTexts);
  } catch (const CLI::ValidationError& e) {
    res.err = std::string("error: ") + e.what() + "\n";
    res.code = 2;
    return res;
  } catch (const std::invalid_argument& e) {
    res.err = std::string("precondition violated: ") + e.what() + "\n";
    res.code = 3;
    return res;
  } catch (const std::out_of_range& e) {
    res.err = std::string("precondition violated: ") + e.what() + "\n";
    res.code = 3;
    return res;
  } catch (const std::exception& e) {
    res.err = std::string("verification failed: ") + e.what() + "\n";
    res.code = 4;
    return res;
  }
  res.out = o.finish();
  return res;
}

}  // namespace logtangent
