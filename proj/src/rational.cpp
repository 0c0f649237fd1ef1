#include "leakproof/rational.hpp"

#include <cctype>
#include <cstdlib>
#include <limits>
#include <ostream>

namespace leakproof {

namespace {

using int128 = __int128;
using uint128 = unsigned __int128;

uint128 uabs128(int128 v) { return v < 0 ? uint128(-(v + 1)) + 1 : uint128(v); }

uint128 gcd128(uint128 a, uint128 b) {
  while (b != 0) {
    uint128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

long long narrow_or_throw(int128 v, const char* what) {
  if (v > int128(std::numeric_limits<long long>::max()) ||
      v < int128(std::numeric_limits<long long>::min())) {
    throw RationalOverflow(what);
  }
  return static_cast<long long>(v);
}

}  // namespace

Rational Rational::make_reduced(int128 num, int128 den) {
  if (den == 0) throw RationalOverflow("division by zero");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (num == 0) return Rational();
  uint128 g = gcd128(uabs128(num), uint128(den));
  num /= int128(g);
  den /= int128(g);
  Rational r;
  r.num_ = narrow_or_throw(num, "numerator out of range");
  r.den_ = narrow_or_throw(den, "denominator out of range");
  return r;
}

Rational::Rational(long long num, long long den) : num_(0), den_(1) {
  *this = make_reduced(int128(num), int128(den));
}

Rational Rational::inv() const {
  if (num_ == 0) throw RationalOverflow("inverse of zero");
  return make_reduced(int128(den_), int128(num_));
}

Rational operator+(const Rational& a, const Rational& b) {
  return Rational::make_reduced(int128(a.num_) * b.den_ + int128(b.num_) * a.den_,
                                int128(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return Rational::make_reduced(int128(a.num_) * b.den_ - int128(b.num_) * a.den_,
                                int128(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return Rational::make_reduced(int128(a.num_) * b.num_, int128(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw RationalOverflow("division by zero");
  return Rational::make_reduced(int128(a.num_) * b.den_, int128(a.den_) * b.num_);
}

bool operator<(const Rational& a, const Rational& b) {
  return int128(a.num_) * b.den_ < int128(b.num_) * a.den_;
}

double Rational::to_double() const {
  return static_cast<double>(static_cast<long double>(num_) / static_cast<long double>(den_));
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational Rational::from_decimal(long long integer_part, const std::string& frac_digits,
                                bool negative) {
  int128 num = integer_part;
  int128 den = 1;
  for (char c : frac_digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError("bad decimal digit");
    num = num * 10 + (c - '0');
    den *= 10;
    if (den > int128(1000000000000000000LL)) throw ParseError("decimal too long");
  }
  if (negative) num = -num;
  return make_reduced(num, den);
}

Rational Rational::parse(const std::string& s) {
  if (s.empty()) throw ParseError("empty number");
  size_t pos = 0;
  bool negative = false;
  if (s[pos] == '+' || s[pos] == '-') {
    negative = (s[pos] == '-');
    ++pos;
  }
  if (pos >= s.size()) throw ParseError("bad number: " + s);

  auto read_int = [&](size_t* p) -> long long {
    size_t start = *p;
    while (*p < s.size() && std::isdigit(static_cast<unsigned char>(s[*p]))) ++(*p);
    if (*p == start) throw ParseError("bad number: " + s);
    return std::stoll(s.substr(start, *p - start));
  };

  long long head = read_int(&pos);
  if (pos == s.size()) return negative ? Rational(-head) : Rational(head);
  if (s[pos] == '/') {
    ++pos;
    long long den = read_int(&pos);
    if (pos != s.size()) throw ParseError("bad number: " + s);
    Rational r(head, den);
    return negative ? -r : r;
  }
  if (s[pos] == '.') {
    ++pos;
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos != s.size()) throw ParseError("bad number: " + s);
    return from_decimal(head, s.substr(start), negative);
  }
  throw ParseError("bad number: " + s);
}

}  // namespace leakproof
