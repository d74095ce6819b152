#include "freiman/numeric.hpp"

#include <cctype>
#include <limits>

#include "freiman/error.hpp"

namespace freiman {

namespace {

bool is_integer_literal(std::string_view text) {
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
  if (i == text.size()) return false;
  for (; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
  }
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

std::optional<Integer> try_parse_integer(std::string_view text) {
  text = trim(text);
  if (!is_integer_literal(text)) return std::nullopt;
  if (text.front() == '+') text.remove_prefix(1);
  return Integer(std::string(text));
}

Integer parse_integer(std::string_view text) {
  auto value = try_parse_integer(text);
  if (!value) throw InputError("not an integer: '" + std::string(text) + "'");
  return *value;
}

Rational parse_rational(std::string_view text) {
  text = trim(text);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  auto num = try_parse_integer(text.substr(0, slash));
  auto den = try_parse_integer(text.substr(slash + 1));
  if (!num || !den) throw InputError("not a rational: '" + std::string(text) + "'");
  if (*den == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  return Rational(*num, *den);
}

std::string to_string(const Integer& x) { return x.str(); }

std::string to_string(const Rational& q) {
  Integer den = denominator_of(q);
  if (den == 1) return numerator_of(q).str();
  return numerator_of(q).str() + "/" + den.str();
}

Integer numerator_of(const Rational& q) { return Integer(boost::multiprecision::numerator(q)); }
Integer denominator_of(const Rational& q) { return Integer(boost::multiprecision::denominator(q)); }

Integer floor_of(const Rational& q) {
  Integer num = numerator_of(q);
  Integer den = denominator_of(q);
  Integer quot = num / den;
  if (quot * den != num && num < 0) quot -= 1;
  return quot;
}

Integer gcd_of(const Integer& a, const Integer& b) {
  return Integer(boost::multiprecision::gcd(a, b));
}

Integer integer_root(const Integer& x, unsigned n) {
  if (x < 0) throw InputError("integer_root of a negative number");
  if (n == 0) throw InputError("integer_root with exponent zero");
  Integer r;
  mpz_root(r.backend().data(), x.backend().data(), n);
  return r;
}

Integer pow_of(const Integer& base, unsigned exponent) {
  return Integer(boost::multiprecision::pow(base, exponent));
}

Integer factorial(unsigned n) {
  Integer f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

bool all_within(const std::vector<Integer>& values, const Integer& limit) {
  for (const auto& v : values) {
    if (abs_of(v) > limit) return false;
  }
  return true;
}

bool fits_int64(const Integer& x) {
  static const Integer lo(std::numeric_limits<std::int64_t>::min());
  static const Integer hi(std::numeric_limits<std::int64_t>::max());
  return x >= lo && x <= hi;
}

std::int64_t to_int64(const Integer& x) {
  if (!fits_int64(x)) throw Error("integer out of 64-bit range: " + x.str());
  return x.convert_to<std::int64_t>();
}

double to_double(const Rational& q) { return q.convert_to<double>(); }
double to_double(const Integer& x) { return x.convert_to<double>(); }

}  // namespace freiman
