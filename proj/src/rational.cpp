#include "lattice/rational.hpp"

#include <limits>

namespace lattice {

std::string to_string(const Rational& q) {
  const BigInt n = numerator(q);
  const BigInt d = denominator(q);
  if (d == 1) return n.str();
  return n.str() + "/" + d.str();
}

Rational parse_rational(const std::string& s) {
  try {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(BigInt(s));
    const BigInt n(s.substr(0, slash));
    const BigInt d(s.substr(slash + 1));
    if (d == 0) throw InputError("zero denominator in '" + s + "'");
    return Rational(n, d);
  } catch (const InputError&) {
    throw;
  } catch (const std::exception&) {
    throw InputError("not a rational number: '" + s + "'");
  }
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

BigInt floor(const Rational& q) { return floor_div(numerator(q), denominator(q)); }

BigInt ceil(const Rational& q) { return -floor(-q); }

Rational mod1(const Rational& q) { return q - Rational(floor(q)); }

bool is_integer(const Rational& q) { return denominator(q) == 1; }

int64_t to_int64(const BigInt& x) {
  if (x > std::numeric_limits<int64_t>::max() || x < std::numeric_limits<int64_t>::min())
    throw ComputationError("integer overflow converting " + x.str() + " to int64");
  return static_cast<int64_t>(x);
}

int64_t to_int64(const Rational& q) {
  if (!is_integer(q)) throw ComputationError("expected an integer, got " + to_string(q));
  return to_int64(numerator(q));
}

int64_t floor_int(const Rational& q) { return to_int64(floor(q)); }
int64_t ceil_int(const Rational& q) { return to_int64(ceil(q)); }

}  // namespace lattice
