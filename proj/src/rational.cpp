#include "hypershift/rational.hpp"

#include "hypershift/error.hpp"

namespace hypershift {

std::string to_string(const Rational& value) {
  Rational canonical = value;
  canonical.canonicalize();
  return canonical.get_num().get_str() + "/" + canonical.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  std::string str(text);
  if (str.empty()) throw Error(ErrorKind::Parse, "empty rational");
  Rational value;
  if (value.set_str(str, 10) != 0) throw Error(ErrorKind::Parse, "bad rational '" + str + "'");
  if (value.get_den() == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + str + "'");
  value.canonicalize();
  return value;
}

Integer ipow(std::uint64_t base, std::uint64_t exponent) {
  Integer result;
  mpz_ui_pow_ui(result.get_mpz_t(), base, exponent);
  return result;
}

Rational rpow(std::uint64_t base, std::int64_t exponent) {
  if (exponent >= 0) return Rational(ipow(base, static_cast<std::uint64_t>(exponent)));
  return Rational(Integer(1), ipow(base, static_cast<std::uint64_t>(-exponent)));
}

Integer floor(const Rational& value) {
  Integer result;
  mpz_fdiv_q(result.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return result;
}

double to_double(const Rational& value) { return value.get_d(); }

}  // namespace hypershift
