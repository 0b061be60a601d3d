#include "freeconv/series.hpp"

#include "freeconv/error.hpp"

#include <algorithm>
#include <cmath>

namespace freeconv {

TruncatedSeries::TruncatedSeries(std::size_t order) : coeffs_(order + 1, Scalar(0)) {}

TruncatedSeries::TruncatedSeries(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw std::invalid_argument("TruncatedSeries needs at least one coefficient");
  unify();
}

TruncatedSeries TruncatedSeries::constant(const Scalar& c, std::size_t order) {
  TruncatedSeries s(order);
  s.coeffs_[0] = c;
  s.unify();
  return s;
}

TruncatedSeries TruncatedSeries::identity(std::size_t order) {
  TruncatedSeries s(order);
  if (order >= 1) s.coeffs_[1] = Scalar(1);
  return s;
}

TruncatedSeries TruncatedSeries::linear(const Scalar& c0, const Scalar& c1, std::size_t order) {
  TruncatedSeries s(order);
  s.coeffs_[0] = c0;
  if (order >= 1) s.coeffs_[1] = c1;
  s.unify();
  return s;
}

bool TruncatedSeries::is_exact() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Scalar& c) { return c.is_exact(); });
}

void TruncatedSeries::unify() {
  if (is_exact()) return;
  for (auto& c : coeffs_) c = to_float(c);
}

TruncatedSeries TruncatedSeries::truncate(std::size_t order) const {
  if (order > this->order()) throw Error(ErrorCode::OrderMismatch, "cannot truncate to a higher order");
  return TruncatedSeries(std::vector<Scalar>(coeffs_.begin(), coeffs_.begin() + order + 1));
}

TruncatedSeries TruncatedSeries::shift_up(std::size_t k) const {
  TruncatedSeries out(order());
  for (std::size_t n = k; n <= order(); ++n) out.coeffs_[n] = coeffs_[n - k];
  out.unify();
  return out;
}

TruncatedSeries TruncatedSeries::shift_down(std::size_t k) const {
  if (k > order()) throw Error(ErrorCode::OrderMismatch, "shift_down below order 0");
  for (std::size_t n = 0; n < k; ++n)
    if (!coeffs_[n].is_zero()) throw Error(ErrorCode::NonzeroInnerConstant, "shift_down of a series with low-order terms");
  return TruncatedSeries(std::vector<Scalar>(coeffs_.begin() + k, coeffs_.end()));
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o) {
  coeffs_.resize(std::min(coeffs_.size(), o.coeffs_.size()));
  for (std::size_t n = 0; n < coeffs_.size(); ++n) coeffs_[n] += o.coeffs_[n];
  unify();
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& o) {
  coeffs_.resize(std::min(coeffs_.size(), o.coeffs_.size()));
  for (std::size_t n = 0; n < coeffs_.size(); ++n) coeffs_[n] -= o.coeffs_[n];
  unify();
  return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(const TruncatedSeries& o) {
  const std::size_t len = std::min(coeffs_.size(), o.coeffs_.size());
  std::vector<Scalar> out(len, Scalar(0));
  for (std::size_t i = 0; i < len; ++i) {
    if (coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; i + j < len; ++j) out[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  coeffs_ = std::move(out);
  unify();
  return *this;
}

TruncatedSeries& TruncatedSeries::operator/=(const TruncatedSeries& o) {
  if (o.coeffs_[0].is_zero()) throw Error(ErrorCode::DivisionByZeroConstant, "divisor has zero constant term");
  const std::size_t len = std::min(coeffs_.size(), o.coeffs_.size());
  // Long division: q_n = (a_n - sum_{i=1}^{n} b_i q_{n-i}) / b_0.
  std::vector<Scalar> q(len, Scalar(0));
  for (std::size_t n = 0; n < len; ++n) {
    Scalar acc = coeffs_[n];
    for (std::size_t i = 1; i <= n; ++i) acc -= o.coeffs_[i] * q[n - i];
    q[n] = acc / o.coeffs_[0];
  }
  coeffs_ = std::move(q);
  unify();
  return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(const Scalar& s) {
  for (auto& c : coeffs_) c *= s;
  unify();
  return *this;
}

TruncatedSeries TruncatedSeries::operator-() const {
  TruncatedSeries out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

std::string TruncatedSeries::to_string() const {
  std::string out = "[";
  for (std::size_t n = 0; n < coeffs_.size(); ++n) {
    if (n) out += ", ";
    out += coeffs_[n].to_string();
  }
  return out + "]";
}

TruncatedSeries series_arith(const TruncatedSeries& a, const TruncatedSeries& b, SeriesOp op) {
  switch (op) {
    case SeriesOp::Add: return a + b;
    case SeriesOp::Sub: return a - b;
    case SeriesOp::Mul: return a * b;
    case SeriesOp::Div: return a / b;
  }
  throw std::logic_error("unknown SeriesOp");
}

TruncatedSeries series_inverse(const TruncatedSeries& f) {
  return TruncatedSeries::constant(Scalar(1), f.order()) / f;
}

TruncatedSeries series_compose(const TruncatedSeries& f, const TruncatedSeries& g) {
  if (!g[0].is_zero()) throw Error(ErrorCode::NonzeroInnerConstant, "inner series must vanish at 0");
  const std::size_t order = std::min(f.order(), g.order());
  const TruncatedSeries inner = g.truncate(order);
  // Horner: f_N, then r*g + f_k down to k = 0.
  TruncatedSeries result = TruncatedSeries::constant(f[order], order);
  for (std::size_t k = order; k-- > 0;) {
    result *= inner;
    result += TruncatedSeries::constant(f[k], order);
  }
  return result;
}

TruncatedSeries series_reversion(const TruncatedSeries& f) {
  if (!f[0].is_zero()) throw Error(ErrorCode::NonzeroInnerConstant, "reversion needs f(0) = 0");
  const std::size_t order = f.order();
  if (order == 0) return TruncatedSeries(0);
  if (f[1].is_zero()) throw Error(ErrorCode::ZeroLinearCoefficient, "reversion needs f'(0) != 0");

  // powers[j][d] = [z^d] g^j, filled column by column as coefficients of g
  // become known; [z^k] g^j for j >= 2 only involves g_1..g_{k-1}.
  std::vector<Scalar> g(order + 1, Scalar(0));
  std::vector<std::vector<Scalar>> powers(order + 1, std::vector<Scalar>(order + 1, Scalar(0)));
  for (std::size_t k = 1; k <= order; ++k) {
    Scalar rhs = k == 1 ? Scalar(1) : Scalar(0);
    for (std::size_t j = 2; j <= k; ++j) {
      Scalar acc(0);
      for (std::size_t i = j - 1; i + 1 <= k; ++i) acc += powers[j - 1][i] * g[k - i];
      powers[j][k] = acc;
      rhs -= f[j] * acc;
    }
    g[k] = rhs / f[1];
    powers[1][k] = g[k];
  }
  return TruncatedSeries(std::move(g));
}

TruncatedSeries series_sqrt(const TruncatedSeries& f) {
  if (f[0].sign() <= 0) throw Error(ErrorCode::NonpositiveConstant, "sqrt needs f(0) > 0");
  const std::size_t order = f.order();
  std::vector<Scalar> g(order + 1, Scalar(0));
  g[0] = sqrt(f[0]);
  const Scalar two_g0 = g[0] * Scalar(2);
  for (std::size_t k = 1; k <= order; ++k) {
    Scalar acc = f[k];
    for (std::size_t i = 1; i < k; ++i) acc -= g[i] * g[k - i];
    g[k] = acc / two_g0;
  }
  return TruncatedSeries(std::move(g));
}

bool series_equal(const TruncatedSeries& a, const TruncatedSeries& b, double tol) {
  if (a.order() != b.order()) return false;
  for (std::size_t n = 0; n <= a.order(); ++n) {
    if (a.is_exact() && b.is_exact()) {
      if (!exact_equal(a[n], b[n])) return false;
    } else if (!approx_equal(a[n], b[n], tol)) {
      return false;
    }
  }
  return true;
}

HalfSeries half_series_mul(const HalfSeries& a, const HalfSeries& b) {
  if (a.half && b.half)
    throw Error(ErrorCode::DoubleHalfPower, "product of two z^(-1/2) series is not representable");
  return {a.half != b.half, a.body * b.body};
}

HalfSeries half_series_div(const HalfSeries& a, const HalfSeries& b) {
  if (!a.half && b.half)
    throw Error(ErrorCode::DoubleHalfPower, "quotient would carry z^(+1/2)");
  return {a.half != b.half, a.body / b.body};
}

TruncatedSeries squared_half_to_carrier(const HalfSeries& s) {
  if (!s.half) throw Error(ErrorCode::AsymmetricInput, "squared identity applies to symmetric S-transforms only");
  const auto order = s.body.order();
  return s.body * s.body / TruncatedSeries::linear(Scalar(1), Scalar(1), order);
}

}  // namespace freeconv
