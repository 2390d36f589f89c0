#include "logtangent/forms.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace logtangent {

std::vector<Mono> monomials_of_degree(int d) {
  std::vector<Mono> out;
  if (d < 0) return out;
  for (int a = d; a >= 0; --a)
    for (int b = d - a; b >= 0; --b) out.push_back(Mono{{a, b, d - a - b}});
  return out;
}

int dim_forms(int d) { return d < 0 ? 0 : (d + 1) * (d + 2) / 2; }

Form Form::term(const Rational& coeff, int a, int b, int c2) {
  Form f;
  if (a < 0 || b < 0 || c2 < 0) throw std::invalid_argument("negative exponent");
  f.add_term(Mono{{a, b, c2}}, coeff);
  return f;
}

Form Form::variable(int i) {
  Mono m;
  m.e[i] = 1;
  Form f;
  f.add_term(m, 1);
  return f;
}

Form Form::constant(const Rational& c) { return term(c, 0, 0, 0); }

int Form::degree() const {
  return terms_.empty() ? -1 : terms_.begin()->first.degree();
}

Rational Form::coeff(const Mono& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Form::add_term(const Mono& m, const Rational& raw) {
  // mpq_class comparisons require canonical form; callers may hand us
  // mpq_class(n, d) built without canonicalize().
  Rational c = raw;
  c.canonicalize();
  if (c == 0) return;
  if (!terms_.empty() && m.degree() != degree())
    throw std::invalid_argument("inhomogeneous term");
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    it->second.canonicalize();
    if (it->second == 0) terms_.erase(it);
  }
}

Form Form::operator+(const Form& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (degree() != o.degree()) throw std::invalid_argument("degree mismatch in +");
  Form r(*this);
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

Form Form::operator-(const Form& o) const { return *this + (-o); }

Form Form::operator-() const {
  Form r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

Form Form::operator*(const Form& o) const {
  Form r;
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : o.terms_) {
      Mono m{{m1.e[0] + m2.e[0], m1.e[1] + m2.e[1], m1.e[2] + m2.e[2]}};
      r.add_term(m, c1 * c2);
    }
  return r;
}

Form Form::operator*(const Rational& c) const {
  if (c == 0) return Form();
  Form r;
  for (const auto& [m, cf] : terms_) {
    Rational p = cf * c;
    p.canonicalize();
    r.terms_.emplace(m, p);
  }
  return r;
}

Form Form::derivative(int var) const {
  Form r;
  for (const auto& [m, c] : terms_) {
    if (m.e[var] == 0) continue;
    Mono d = m;
    d.e[var] -= 1;
    r.add_term(d, c * m.e[var]);
  }
  return r;
}

Rational Form::evaluate(const std::array<Rational, 3>& p) const {
  Rational acc(0);
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (int v = 0; v < 3; ++v)
      for (int k = 0; k < m.e[v]; ++k) t *= p[v];
    acc += t;
  }
  acc.canonicalize();
  return acc;
}

std::vector<Rational> Form::coefficients(int d) const {
  if (!is_zero() && d != degree())
    throw std::invalid_argument("coefficient degree mismatch");
  std::vector<Rational> out(dim_forms(d), Rational(0));
  auto basis = monomials_of_degree(d);
  for (std::size_t i = 0; i < basis.size(); ++i) out[i] = coeff(basis[i]);
  return out;
}

Form Form::from_coefficients(int d, const std::vector<Rational>& coeffs) {
  auto basis = monomials_of_degree(d);
  if (coeffs.size() != basis.size())
    throw std::invalid_argument("coefficient vector size mismatch");
  Form f;
  for (std::size_t i = 0; i < basis.size(); ++i) f.add_term(basis[i], coeffs[i]);
  return f;
}

Form Form::primitive() const {
  if (is_zero()) return *this;
  std::vector<Rational> coeffs;
  for (const auto& [m, c] : terms_) coeffs.push_back(c);
  auto prim = primitive_integer_vector(coeffs);
  Form r;
  std::size_t i = 0;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, Rational(prim[i++]));
  return r;
}

std::string Form::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational a = c;
    if (first) {
      if (a < 0) {
        os << "-";
        a = -a;
      }
    } else {
      os << (a < 0 ? "-" : "+");
      if (a < 0) a = -a;
    }
    first = false;
    bool constant_mono = (m.degree() == 0);
    if (a != 1 || constant_mono) {
      os << to_string(a);
      if (!constant_mono) os << "*";
    }
    bool needs_star = false;
    for (int v = 0; v < 3; ++v) {
      if (m.e[v] == 0) continue;
      if (needs_star) os << "*";
      os << "x" << v;
      if (m.e[v] > 1) os << "^" << m.e[v];
      needs_star = true;
    }
  }
  return os.str();
}

namespace {

/// Minimal recursive-descent tokenizer for the form grammar.
struct FormParser {
  const std::string& s;
  std::size_t i = 0;

  explicit FormParser(const std::string& text) : s(text) {}

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eof() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }

  std::optional<Integer> parse_uint() {
    skip_ws();
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start) return std::nullopt;
    return Integer(s.substr(start, i - start));
  }

  // coefficient := uint [ '/' uint ]
  std::optional<Rational> parse_coeff() {
    auto num = parse_uint();
    if (!num) return std::nullopt;
    skip_ws();
    if (i < s.size() && s[i] == '/') {
      ++i;
      auto den = parse_uint();
      if (!den || *den == 0) return std::nullopt;
      Rational r(*num, *den);
      r.canonicalize();
      return r;
    }
    return Rational(*num);
  }

  // factor := 'x' digit [ '^' uint ]
  bool parse_var_factor(Mono* m) {
    skip_ws();
    if (i >= s.size() || s[i] != 'x') return false;
    ++i;
    if (i >= s.size() || s[i] < '0' || s[i] > '2') return false;
    int var = s[i] - '0';
    ++i;
    int exp = 1;
    skip_ws();
    if (i < s.size() && s[i] == '^') {
      ++i;
      auto e = parse_uint();
      if (!e || !e->fits_sint_p()) return false;
      exp = static_cast<int>(e->get_si());
      if (exp < 0) return false;
    }
    m->e[var] += exp;
    return true;
  }

  // term := coeff ['*' factors] | factors
  bool parse_term(Rational* coeff_out, Mono* mono_out) {
    *coeff_out = 1;
    *mono_out = Mono{};
    bool have_any = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      auto c = parse_coeff();
      if (!c) return false;
      *coeff_out = *c;
      have_any = true;
      skip_ws();
      if (i < s.size() && s[i] == '*') {
        ++i;
      } else if (peek() != 'x') {
        return true;  // bare constant
      } else {
        return false;  // "2x0" without '*' is not in the grammar
      }
    }
    // variable factors joined by '*'
    if (!parse_var_factor(mono_out)) return false;
    have_any = true;
    while (true) {
      skip_ws();
      if (i < s.size() && s[i] == '*') {
        std::size_t save = i;
        ++i;
        if (!parse_var_factor(mono_out)) {
          i = save;
          return false;
        }
      } else {
        break;
      }
    }
    return have_any;
  }
};

}  // namespace

std::optional<Form> parse_form(const std::string& text) {
  FormParser p(text);
  Form result;
  bool first = true;
  int degree_seen = -1;
  while (!p.eof()) {
    int sign = 1;
    char c = p.peek();
    if (c == '+' || c == '-') {
      sign = (c == '-') ? -1 : 1;
      ++p.i;
    } else if (!first) {
      return std::nullopt;  // terms must be joined by +/-
    }
    Rational coeff;
    Mono mono;
    if (!p.parse_term(&coeff, &mono)) return std::nullopt;
    if (degree_seen >= 0 && mono.degree() != degree_seen) return std::nullopt;
    degree_seen = mono.degree();
    try {
      result.add_term(mono, coeff * sign);
    } catch (const std::invalid_argument&) {
      return std::nullopt;
    }
    first = false;
  }
  if (first) return std::nullopt;  // empty input
  return result;
}

std::array<Form, 3> gradient(const Form& f) {
  return {f.derivative(0), f.derivative(1), f.derivative(2)};
}

namespace {

std::array<Integer, 3> normalize_triple(const Rational& a, const Rational& b,
                                        const Rational& c) {
  auto prim = primitive_integer_vector({a, b, c});
  if (prim[0] == 0 && prim[1] == 0 && prim[2] == 0)
    throw std::invalid_argument("zero coordinate triple");
  return {prim[0], prim[1], prim[2]};
}

std::optional<std::array<Rational, 3>> parse_triple(const std::string& text) {
  std::string t = text;
  // strip whitespace
  std::string stripped;
  for (char ch : t)
    if (!std::isspace(static_cast<unsigned char>(ch))) stripped += ch;
  if (stripped.size() < 2 || stripped.front() != '[' || stripped.back() != ']')
    return std::nullopt;
  stripped = stripped.substr(1, stripped.size() - 2);
  std::array<Rational, 3> out;
  std::size_t pos = 0;
  for (int k = 0; k < 3; ++k) {
    std::size_t colon = (k < 2) ? stripped.find(':', pos) : stripped.size();
    if (colon == std::string::npos) return std::nullopt;
    auto r = parse_rational(stripped.substr(pos, colon - pos));
    if (!r) return std::nullopt;
    out[k] = *r;
    pos = colon + 1;
  }
  return out;
}

std::string triple_str(const std::array<Integer, 3>& c) {
  return "[" + c[0].get_str() + ":" + c[1].get_str() + ":" + c[2].get_str() + "]";
}

}  // namespace

PointP2::PointP2(const Rational& a, const Rational& b, const Rational& c)
    : c_(normalize_triple(a, b, c)) {}

std::array<Rational, 3> PointP2::rational_coords() const {
  return {Rational(c_[0]), Rational(c_[1]), Rational(c_[2])};
}

bool PointP2::operator<(const PointP2& o) const {
  for (int k = 0; k < 3; ++k)
    if (c_[k] != o.c_[k]) return c_[k] < o.c_[k];
  return false;
}

std::string PointP2::str() const { return triple_str(c_); }

std::optional<PointP2> parse_point(const std::string& text) {
  auto t = parse_triple(text);
  if (!t) return std::nullopt;
  try {
    return PointP2((*t)[0], (*t)[1], (*t)[2]);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

LineP2::LineP2(const Rational& a0, const Rational& a1, const Rational& a2)
    : a_(normalize_triple(a0, a1, a2)) {}

bool LineP2::contains(const PointP2& p) const {
  Integer dot = a_[0] * p.coords()[0] + a_[1] * p.coords()[1] + a_[2] * p.coords()[2];
  return dot == 0;
}

bool LineP2::operator<(const LineP2& o) const {
  for (int k = 0; k < 3; ++k)
    if (a_[k] != o.a_[k]) return a_[k] < o.a_[k];
  return false;
}

Form LineP2::linear_form() const {
  Form f;
  for (int v = 0; v < 3; ++v)
    if (a_[v] != 0) f = f + Form::term(Rational(a_[v]), v == 0, v == 1, v == 2);
  return f;
}

std::pair<std::array<Rational, 3>, std::array<Rational, 3>> LineP2::chart() const {
  int i = 0;
  while (a_[i] == 0) ++i;
  std::array<int, 2> others{};
  int n = 0;
  for (int k = 0; k < 3; ++k)
    if (k != i) others[n++] = k;
  std::array<Rational, 3> P{Rational(0), Rational(0), Rational(0)};
  std::array<Rational, 3> Q{Rational(0), Rational(0), Rational(0)};
  P[others[0]] = Rational(a_[i]);
  P[i] = -Rational(a_[others[0]]);
  Q[others[1]] = Rational(a_[i]);
  Q[i] = -Rational(a_[others[1]]);
  return {P, Q};
}

std::string LineP2::str() const { return triple_str(a_); }

std::optional<LineP2> parse_line(const std::string& text) {
  auto t = parse_triple(text);
  if (!t) return std::nullopt;
  try {
    return LineP2((*t)[0], (*t)[1], (*t)[2]);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

namespace {
std::array<Rational, 3> cross(const std::array<Rational, 3>& u,
                              const std::array<Rational, 3>& v) {
  return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2],
          u[0] * v[1] - u[1] * v[0]};
}
}  // namespace

LineP2 line_through(const PointP2& p, const PointP2& q) {
  auto c = cross(p.rational_coords(), q.rational_coords());
  return LineP2(c[0], c[1], c[2]);  // throws for p == q
}

PointP2 line_intersection(const LineP2& l, const LineP2& m) {
  std::array<Rational, 3> lc, mc;
  for (int k = 0; k < 3; ++k) {
    lc[k] = Rational(l.coords()[k]);
    mc[k] = Rational(m.coords()[k]);
  }
  auto c = cross(lc, mc);
  return PointP2(c[0], c[1], c[2]);
}

LineP2 tangent_line(const Form& f, const PointP2& p) {
  auto g = gradient(f);
  auto pc = p.rational_coords();
  Rational a = g[0].evaluate(pc), b = g[1].evaluate(pc), c = g[2].evaluate(pc);
  return LineP2(a, b, c);  // throws when the gradient vanishes
}

}  // namespace logtangent
