#include "logtangent/rational.hpp"

#include <cctype>

namespace logtangent {

std::string to_string(const Rational& r) {
  Rational c(r);
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

std::string to_string(const Integer& z) { return z.get_str(); }

std::optional<Rational> parse_rational(const std::string& text) {
  if (text.empty()) return std::nullopt;
  std::string num, den = "1";
  auto slash = text.find('/');
  if (slash == std::string::npos) {
    num = text;
  } else {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
  }
  auto is_int = [](const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  if (!is_int(num) || !is_int(den)) return std::nullopt;
  Integer n(num), d(den);
  if (d == 0) return std::nullopt;
  Rational r(n, d);
  r.canonicalize();
  return r;
}

Integer int_gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

std::vector<Integer> primitive_integer_vector(const std::vector<Rational>& v) {
  Integer lcm = 1;
  for (const auto& r : v) {
    Rational c(r);
    c.canonicalize();
    Integer den = c.get_den();
    Integer g = int_gcd(lcm, den);
    lcm = lcm / g * den;
  }
  std::vector<Integer> out;
  out.reserve(v.size());
  Integer content = 0;
  for (const auto& r : v) {
    Rational c(r);
    c.canonicalize();
    Integer entry = c.get_num() * (lcm / c.get_den());
    out.push_back(entry);
    content = int_gcd(content, entry);
  }
  if (content == 0) return out;  // zero vector
  int sign = 0;
  for (const auto& e : out) {
    if (e != 0) {
      sign = (e > 0) ? 1 : -1;
      break;
    }
  }
  for (auto& e : out) e /= (sign < 0 ? -content : content);
  return out;
}

}  // namespace logtangent
