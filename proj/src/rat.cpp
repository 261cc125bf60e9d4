#include "polytri/rat.hpp"

#include <cctype>
#include <ostream>

namespace polytri {

namespace {

bool is_valid_integer_token(const std::string& s, bool allow_sign) {
  if (s.empty()) return false;
  size_t i = 0;
  if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rat Rat::from_string(const std::string& s) {
  const size_t slash = s.find('/');
  if (slash == std::string::npos) {
    if (!is_valid_integer_token(s, true))
      throw ParseError("invalid rational literal '" + s + "'");
    return Rat(mpz_class(s[0] == '+' ? s.substr(1) : s, 10));
  }
  std::string num = s.substr(0, slash);
  const std::string den = s.substr(slash + 1);
  if (!is_valid_integer_token(num, true) || !is_valid_integer_token(den, false))
    throw ParseError("invalid rational literal '" + s + "'");
  if (num[0] == '+') num = num.substr(1);
  mpz_class d(den, 10);
  if (d == 0) throw ParseError("zero denominator in rational literal '" + s + "'");
  return Rat(mpz_class(num, 10), d);
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

}  // namespace polytri
