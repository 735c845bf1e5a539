#include "indep/rational.hpp"

#include <cmath>

#include "indep/error.hpp"

namespace indep {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  if (!body.empty() && body.front() == '-') body.remove_prefix(1);
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw Error(ErrorCode::BadRational, "expected \"p/q\" or an integer, got \"" + std::string(text) + "\"");
  }
  const mpz_class d(std::string(den), 10);
  if (d == 0) throw Error(ErrorCode::BadRational, "zero denominator in \"" + std::string(text) + "\"");
  Rational r(mpz_class(std::string(num), 10), d);
  r.canonicalize();
  if (text.front() == '-') r = -r;
  return r;
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_str();
}

Rational sum(std::span<const Rational> values) {
  Rational total = 0;
  for (const auto& v : values) total += v;
  return total;
}

Rational from_double(double value) {
  if (!std::isfinite(value)) throw Error(ErrorCode::BadRational, "non-finite value");
  return Rational(value);
}

}  // namespace indep
