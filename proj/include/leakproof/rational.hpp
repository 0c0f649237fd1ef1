#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "leakproof/errors.hpp"

namespace leakproof {

// Exact rational number on int64 numerator/denominator, always normalized
// (denominator > 0, gcd(|num|, den) == 1). Intermediate products run in
// 128-bit arithmetic; if a reduced result does not fit back into 64 bits the
// operation throws RationalOverflow rather than returning a wrong value.
//
// Comparisons cross-multiply in 128 bits and are always exact.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  Rational(long long num, long long den);

  // Accepts "3", "-3", "3/4", "-3/4", "0.25", "-1.5".
  static Rational parse(const std::string& s);
  static Rational from_decimal(long long integer_part, const std::string& frac_digits,
                               bool negative);

  long long num() const { return num_; }
  long long den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }
  Rational abs() const { return num_ < 0 ? Rational(-num_, den_) : *this; }
  Rational inv() const;

  double to_double() const;
  std::string str() const;  // "n" or "n/d"

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const { return Rational(-num_, den_); }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b);
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  static Rational make_reduced(__int128 num, __int128 den);
  long long num_;
  long long den_;
};

inline Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace leakproof
