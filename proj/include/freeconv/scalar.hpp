#pragma once

// Tagged coefficient type: an exact rational or a double.
//
// Arithmetic between two exact values stays exact. Anything touching a
// double yields a double. There is deliberately no operator==; use
// exact_equal() or approx_equal() with an explicit tolerance.

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <variant>

namespace freeconv {

class Scalar {
 public:
  Scalar() : value_(mpq_class(0)) {}
  Scalar(int v) : value_(mpq_class(v)) {}
  Scalar(long v) : value_(mpq_class(v)) {}
  Scalar(long long v) : value_(mpq_class(static_cast<long>(v))) {}
  Scalar(unsigned v) : value_(mpq_class(v)) {}
  Scalar(unsigned long v) : value_(mpq_class(v)) {}
  Scalar(const mpq_class& q) : value_(q) { std::get<mpq_class>(value_).canonicalize(); }

  /// Exact p/q. Throws on q == 0.
  static Scalar ratio(long p, long q);
  static Scalar real(double v) { return Scalar(Tag{}, v); }

  /// Parses "3", "-3/4", "0.125", "1e-3" exactly; a leading '~' marks a float ("~1.41").
  static Scalar parse(std::string_view text);

  bool is_exact() const { return std::holds_alternative<mpq_class>(value_); }
  const mpq_class& rational() const;
  double to_double() const;

  /// -1, 0 or +1. Exact for rationals, IEEE sign for doubles.
  int sign() const;
  bool is_zero() const { return sign() == 0; }

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  Scalar operator-() const;

  /// "p/q" (or "p") for rationals, 12 significant digits for doubles.
  std::string to_string() const;
  /// Lossless text that parse() maps back to an identical Scalar.
  std::string serialize() const;

 private:
  struct Tag {};
  Scalar(Tag, double v) : value_(v) {}

  std::variant<mpq_class, double> value_;
};

Scalar to_float(const Scalar& s);
Scalar abs(const Scalar& s);
Scalar pow(const Scalar& base, unsigned exponent);

/// Non-negative square root; exact when the argument is the square of a rational.
Scalar sqrt(const Scalar& s);

/// Both exact and equal.
bool exact_equal(const Scalar& a, const Scalar& b);
/// |a - b| <= tol * max(1, |a|, |b|).
bool approx_equal(const Scalar& a, const Scalar& b, double tol);
/// Same tag and same value (bitwise for doubles).
bool identical(const Scalar& a, const Scalar& b);

/// Strict ordering of values; exact when both are exact.
bool less(const Scalar& a, const Scalar& b);

}  // namespace freeconv
