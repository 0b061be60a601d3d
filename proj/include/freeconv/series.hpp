#pragma once

// Truncated formal power series c_0 + c_1 z + ... + c_N z^N over Scalar.
//
// Binary operations truncate to the smaller order. A series whose
// coefficients are not all exact is stored with every coefficient as a
// double, so exactness is a property of the whole series.

#include "freeconv/scalar.hpp"

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace freeconv {

inline constexpr std::size_t kDefaultOrder = 16;

class TruncatedSeries {
 public:
  /// Zero series of the given order.
  explicit TruncatedSeries(std::size_t order);
  /// Coefficients c_0..c_N; order is coeffs.size() - 1. Requires a non-empty list.
  explicit TruncatedSeries(std::vector<Scalar> coeffs);
  TruncatedSeries(std::initializer_list<Scalar> coeffs)
      : TruncatedSeries(std::vector<Scalar>(coeffs)) {}

  static TruncatedSeries constant(const Scalar& c, std::size_t order);
  /// The series "z" at the given order.
  static TruncatedSeries identity(std::size_t order);
  /// c_0 + c_1 z, padded to the order.
  static TruncatedSeries linear(const Scalar& c0, const Scalar& c1, std::size_t order);

  std::size_t order() const { return coeffs_.size() - 1; }
  const Scalar& operator[](std::size_t n) const { return coeffs_.at(n); }
  std::span<const Scalar> coeffs() const { return coeffs_; }
  bool is_exact() const;

  /// Same coefficients at a lower order.
  TruncatedSeries truncate(std::size_t order) const;
  /// Multiplies by z^k (order unchanged, top coefficients dropped).
  TruncatedSeries shift_up(std::size_t k = 1) const;
  /// Divides by z^k. Requires c_0..c_{k-1} = 0; order drops by k.
  TruncatedSeries shift_down(std::size_t k = 1) const;

  TruncatedSeries& operator+=(const TruncatedSeries& o);
  TruncatedSeries& operator-=(const TruncatedSeries& o);
  TruncatedSeries& operator*=(const TruncatedSeries& o);
  TruncatedSeries& operator/=(const TruncatedSeries& o);
  TruncatedSeries& operator*=(const Scalar& s);

  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator*(TruncatedSeries a, const TruncatedSeries& b) { return a *= b; }
  friend TruncatedSeries operator/(TruncatedSeries a, const TruncatedSeries& b) { return a /= b; }
  friend TruncatedSeries operator*(TruncatedSeries a, const Scalar& s) { return a *= s; }
  friend TruncatedSeries operator*(const Scalar& s, TruncatedSeries a) { return a *= s; }
  TruncatedSeries operator-() const;

  std::string to_string() const;

 private:
  void unify();

  std::vector<Scalar> coeffs_;
};

enum class SeriesOp { Add, Sub, Mul, Div };

TruncatedSeries series_arith(const TruncatedSeries& a, const TruncatedSeries& b, SeriesOp op);

/// 1/f. Throws DivisionByZeroConstant when f(0) = 0.
TruncatedSeries series_inverse(const TruncatedSeries& f);

/// f(g(z)) to order min(order f, order g). Throws NonzeroInnerConstant when g(0) != 0.
TruncatedSeries series_compose(const TruncatedSeries& f, const TruncatedSeries& g);

/// Compositional inverse. Throws NonzeroInnerConstant if f(0) != 0 and
/// ZeroLinearCoefficient if f'(0) = 0.
TruncatedSeries series_reversion(const TruncatedSeries& f);

/// Positive-branch square root. Throws NonpositiveConstant when f(0) <= 0.
TruncatedSeries series_sqrt(const TruncatedSeries& f);

/// Coefficientwise equality; exact series compare exactly, otherwise within tol.
bool series_equal(const TruncatedSeries& a, const TruncatedSeries& b, double tol = 0.0);

/// Value z^(-1/2) * body when half is set, otherwise body itself.
struct HalfSeries {
  bool half = false;
  TruncatedSeries body{0};
};

/// Product; half = a.half XOR b.half. Throws DoubleHalfPower when both are half.
HalfSeries half_series_mul(const HalfSeries& a, const HalfSeries& b);

/// Quotient a / b. half/half gives an ordinary series; ordinary/half would
/// carry z^(+1/2) and throws DoubleHalfPower.
HalfSeries half_series_div(const HalfSeries& a, const HalfSeries& b);

/// For a symmetric S-transform z^(-1/2) T, returns z/(1+z) * S^2 = T^2/(1+z),
/// which is the S-transform of the squared push-forward.
TruncatedSeries squared_half_to_carrier(const HalfSeries& s);

}  // namespace freeconv
