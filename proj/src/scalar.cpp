#include "freeconv/scalar.hpp"

#include "freeconv/error.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace freeconv {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DivisionByZeroConstant: return "DivisionByZeroConstant";
    case ErrorCode::NonzeroInnerConstant: return "NonzeroInnerConstant";
    case ErrorCode::ZeroLinearCoefficient: return "ZeroLinearCoefficient";
    case ErrorCode::NonpositiveConstant: return "NonpositiveConstant";
    case ErrorCode::DoubleHalfPower: return "DoubleHalfPower";
    case ErrorCode::OrderMismatch: return "OrderMismatch";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorCode::InsufficientOrder: return "InsufficientOrder";
    case ErrorCode::NegativeSupport: return "NegativeSupport";
    case ErrorCode::NoClosedForm: return "NoClosedForm";
    case ErrorCode::NoDensity: return "NoDensity";
    case ErrorCode::ZeroFirstMoment: return "ZeroFirstMoment";
    case ErrorCode::EvaluationFailure: return "EvaluationFailure";
    case ErrorCode::InvalidExponent: return "InvalidExponent";
    case ErrorCode::AsymmetricInput: return "AsymmetricInput";
    case ErrorCode::NegativeScale: return "NegativeScale";
    case ErrorCode::NotFreeRegular: return "NotFreeRegular";
    case ErrorCode::TooShort: return "TooShort";
    case ErrorCode::InvalidDimension: return "InvalidDimension";
    case ErrorCode::ModelUnavailable: return "ModelUnavailable";
    case ErrorCode::SpecValidation: return "SpecValidation";
  }
  return "UnknownError";
}

bool is_input_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidParams:
    case ErrorCode::NoDensity:
    case ErrorCode::InvalidDimension:
    case ErrorCode::ModelUnavailable:
    case ErrorCode::SpecValidation:
    case ErrorCode::AsymmetricInput:
    case ErrorCode::NegativeSupport:
    case ErrorCode::NegativeScale:
    case ErrorCode::UnsupportedOrder:
    case ErrorCode::InsufficientOrder:
    case ErrorCode::InvalidExponent:
    case ErrorCode::NotFreeRegular:
    case ErrorCode::TooShort:
    case ErrorCode::ZeroFirstMoment:
      return true;
    default:
      return false;
  }
}

namespace {

mpq_class parse_exact(std::string_view text) {
  auto fail = [&] {
    return Error(ErrorCode::SpecValidation, "cannot parse number '" + std::string(text) + "'");
  };
  if (text.empty()) throw fail();

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    mpz_class num, den;
    if (num.set_str(std::string(text.substr(0, slash)), 10) != 0) throw fail();
    if (den.set_str(std::string(text.substr(slash + 1)), 10) != 0) throw fail();
    if (den == 0) throw Error(ErrorCode::SpecValidation, "zero denominator in '" + std::string(text) + "'");
    mpq_class q(num, den);
    q.canonicalize();
    return q;
  }

  // Decimal with optional fraction and exponent, read exactly.
  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') {
    negative = text[pos] == '-';
    ++pos;
  }
  std::string digits;
  long exponent = 0;
  bool seen_digit = false;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    digits += text[pos++];
    seen_digit = true;
  }
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      digits += text[pos++];
      --exponent;
      seen_digit = true;
    }
  }
  if (!seen_digit) throw fail();
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    long e = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), e);
    if (ec != std::errc() || ptr != text.data() + text.size()) throw fail();
    exponent += e;
    pos = text.size();
  }
  if (pos != text.size()) throw fail();

  mpz_class num(digits, 10);
  if (negative) num = -num;
  mpz_class ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  mpq_class q = exponent < 0 ? mpq_class(num, ten_pow) : mpq_class(num * ten_pow);
  q.canonicalize();
  return q;
}

std::string format_double(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

}  // namespace

Scalar Scalar::ratio(long p, long q) {
  if (q == 0) throw Error(ErrorCode::InvalidParams, "zero denominator");
  return Scalar(mpq_class(p, q));
}

Scalar Scalar::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (!text.empty() && text.front() == '~') {
    text.remove_prefix(1);
    double v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size())
      throw Error(ErrorCode::SpecValidation, "cannot parse float '" + std::string(text) + "'");
    return real(v);
  }
  return Scalar(parse_exact(text));
}

const mpq_class& Scalar::rational() const {
  if (!is_exact()) throw std::logic_error("Scalar::rational() on a float value");
  return std::get<mpq_class>(value_);
}

double Scalar::to_double() const {
  if (is_exact()) return std::get<mpq_class>(value_).get_d();
  return std::get<double>(value_);
}

int Scalar::sign() const {
  if (is_exact()) return sgn(std::get<mpq_class>(value_));
  double v = std::get<double>(value_);
  return (v > 0) - (v < 0);
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (is_exact() && o.is_exact())
    std::get<mpq_class>(value_) += std::get<mpq_class>(o.value_);
  else
    value_ = to_double() + o.to_double();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  if (is_exact() && o.is_exact())
    std::get<mpq_class>(value_) -= std::get<mpq_class>(o.value_);
  else
    value_ = to_double() - o.to_double();
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (is_exact() && o.is_exact())
    std::get<mpq_class>(value_) *= std::get<mpq_class>(o.value_);
  else
    value_ = to_double() * o.to_double();
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw std::domain_error("Scalar division by zero");
  if (is_exact() && o.is_exact())
    std::get<mpq_class>(value_) /= std::get<mpq_class>(o.value_);
  else
    value_ = to_double() / o.to_double();
  return *this;
}

Scalar Scalar::operator-() const {
  if (is_exact()) return Scalar(mpq_class(-std::get<mpq_class>(value_)));
  return real(-std::get<double>(value_));
}

std::string Scalar::to_string() const {
  if (is_exact()) return std::get<mpq_class>(value_).get_str();
  return format_double(std::get<double>(value_), 12);
}

std::string Scalar::serialize() const {
  if (is_exact()) return std::get<mpq_class>(value_).get_str();
  return "~" + format_double(std::get<double>(value_), 17);
}

Scalar to_float(const Scalar& s) { return Scalar::real(s.to_double()); }

Scalar abs(const Scalar& s) { return s.sign() < 0 ? -s : s; }

Scalar pow(const Scalar& base, unsigned exponent) {
  Scalar result(1);
  Scalar b = base;
  while (exponent) {
    if (exponent & 1u) result *= b;
    exponent >>= 1;
    if (exponent) b *= b;
  }
  if (!base.is_exact()) return to_float(result);
  return result;
}

Scalar sqrt(const Scalar& s) {
  if (s.sign() < 0) throw std::domain_error("sqrt of a negative Scalar");
  if (s.is_exact()) {
    const mpq_class& q = s.rational();
    if (mpz_perfect_square_p(q.get_num_mpz_t()) && mpz_perfect_square_p(q.get_den_mpz_t())) {
      mpz_class num, den;
      mpz_sqrt(num.get_mpz_t(), q.get_num_mpz_t());
      mpz_sqrt(den.get_mpz_t(), q.get_den_mpz_t());
      return Scalar(mpq_class(num, den));
    }
  }
  return Scalar::real(std::sqrt(s.to_double()));
}

bool exact_equal(const Scalar& a, const Scalar& b) {
  return a.is_exact() && b.is_exact() && a.rational() == b.rational();
}

bool approx_equal(const Scalar& a, const Scalar& b, double tol) {
  if (a.is_exact() && b.is_exact()) {
    if (a.rational() == b.rational()) return true;
  }
  double x = a.to_double(), y = b.to_double();
  double scale = std::max({1.0, std::fabs(x), std::fabs(y)});
  return std::fabs(x - y) <= tol * scale;
}

bool identical(const Scalar& a, const Scalar& b) {
  if (a.is_exact() != b.is_exact()) return false;
  if (a.is_exact()) return a.rational() == b.rational();
  return a.to_double() == b.to_double();
}

bool less(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return a.rational() < b.rational();
  return a.to_double() < b.to_double();
}

}  // namespace freeconv
