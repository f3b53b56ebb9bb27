// Exact rationals over 128-bit integers with overflow checking.
#pragma once

#include <ostream>
#include <stdexcept>
#include <string>

#include "trapwalk/lattice.hpp"

namespace trapwalk {

class Rational {
 public:
  Rational() = default;
  Rational(Coord n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)
  Rational(Coord n, Coord d) : num_(n), den_(d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    normalize();
  }

  Coord num() const { return num_; }
  Coord den() const { return den_; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    Coord g = gcd(a.den_, b.den_);
    Coord l = a.den_ / g;
    return {checked_add(checked_mul(a.num_, b.den_ / g), checked_mul(b.num_, l)), checked_mul(l, b.den_)};
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + Rational(-b.num_, b.den_); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    Coord g1 = gcd(a.num_, b.den_);
    Coord g2 = gcd(b.num_, a.den_);
    return {checked_mul(a.num_ / g1, b.num_ / g2), checked_mul(a.den_ / g2, b.den_ / g1)};
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return a * Rational(b.den_, b.num_);
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator<(const Rational& a, const Rational& b) {
    return checked_mul(a.num_, b.den_) < checked_mul(b.num_, a.den_);
  }

  long double to_long_double() const { return static_cast<long double>(num_) / static_cast<long double>(den_); }

  std::string str() const { return den_ == 1 ? to_string(num_) : to_string(num_) + "/" + to_string(den_); }

 private:
  static Coord gcd(Coord a, Coord b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      Coord t = a % b;
      a = b;
      b = t;
    }
    return a == 0 ? 1 : a;
  }

  void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    Coord g = gcd(num_, den_);
    num_ /= g;
    den_ /= g;
  }

  Coord num_ = 0;
  Coord den_ = 1;
};

inline Rational pow(Rational base, long long exp) {
  Rational r(1);
  bool inv = exp < 0;
  unsigned long long e = inv ? static_cast<unsigned long long>(-exp) : static_cast<unsigned long long>(exp);
  while (e) {
    if (e & 1) r *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return inv ? Rational(1) / r : r;
}

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace trapwalk
