#include "cy3/rational.hpp"

#include <cctype>

#include "cy3/errors.hpp"

namespace cy3 {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Integer parse_integer(std::string_view digits, std::string_view whole) {
  std::string buf(digits);
  std::size_t start = 0;
  if (!buf.empty() && (buf[0] == '+' || buf[0] == '-')) start = 1;
  if (start == buf.size()) throw ParseError("invalid rational literal '" + std::string(whole) + "'");
  for (std::size_t i = start; i < buf.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(buf[i]))) {
      throw ParseError("invalid rational literal '" + std::string(whole) + "'");
    }
  }
  if (buf[0] == '+') buf.erase(0, 1);
  return Integer(buf, 10);
}

}  // namespace

Rational make_rational(long num, long den) {
  if (den == 0) throw InputError("zero denominator");
  Rational q(num, 1);
  q /= den;
  return q;
}

Rational parse_rational(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) throw ParseError("empty rational literal");
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(s, text));
  const Integer num = parse_integer(trim(s.substr(0, slash)), text);
  const std::string_view den_text = trim(s.substr(slash + 1));
  if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+')) {
    throw ParseError("invalid rational literal '" + std::string(text) + "'");
  }
  const Integer den = parse_integer(den_text, text);
  if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::vector<Rational> parse_rational_list(std::string_view text) {
  std::vector<Rational> out;
  std::size_t pos = 0;
  while (true) {
    const auto comma = text.find(',', pos);
    out.push_back(parse_rational(text.substr(pos, comma == std::string_view::npos ? text.size() - pos : comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::string to_string(const Rational& value) { return value.get_str(10); }

std::string to_string(const std::vector<Rational>& values) {
  std::string out = "(";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += to_string(values[i]);
  }
  return out + ")";
}

bool is_integer(const Rational& value) { return value.get_den() == 1; }

bool all_integer(const std::vector<Rational>& values) {
  for (const auto& v : values) {
    if (!is_integer(v)) return false;
  }
  return true;
}

Integer common_denominator(const std::vector<Rational>& values) {
  Integer l = 1;
  for (const auto& v : values) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  }
  return l;
}

Integer content(const std::vector<Rational>& values) {
  Integer g = 0;
  for (const auto& v : values) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_num_mpz_t());
  }
  return g;
}

}  // namespace cy3
