#include "freeconv/transforms.hpp"

#include "freeconv/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace freeconv {

const char* outcome_name(Outcome o) { return o == Outcome::Rejected ? "Rejected" : "Inconclusive"; }

TruncatedSeries psi_from_moments(const MomentSeq& m) {
  std::vector<Scalar> c(m.order() + 1, Scalar(0));
  for (std::size_t n = 1; n <= m.order(); ++n) c[n] = m.at(n);
  return TruncatedSeries(std::move(c));
}

TruncatedSeries s_from_moments(const MomentSeq& m) {
  if (m.order() == 0) throw Error(ErrorCode::TooShort, "no moments given");
  if (m.at(1).is_zero()) throw Error(ErrorCode::ZeroFirstMoment, "S-transform needs m_1 != 0");
  const auto chi = series_reversion(psi_from_moments(m));
  const auto order = m.order() - 1;
  return chi.shift_down(1) * TruncatedSeries::linear(Scalar(1), Scalar(1), order);
}

HalfSeries s_sym_from_carrier(const MomentSeq& carrier) {
  const auto s = s_from_moments(carrier);
  const auto body = series_sqrt(TruncatedSeries::linear(Scalar(1), Scalar(1), s.order()) * s);
  return {true, body};
}

MomentSeq moments_from_s(const TruncatedSeries& s, std::size_t order) {
  if (order == 0) throw Error(ErrorCode::TooShort, "order must be >= 1");
  if (s.order() + 1 < order)
    throw Error(ErrorCode::InsufficientOrder, "S-transform of order " + std::to_string(s.order()) +
                                                  " cannot give " + std::to_string(order) + " moments");
  if (s[0].sign() <= 0) throw Error(ErrorCode::NonpositiveConstant, "S(0) must be > 0");
  const auto q = s.truncate(order - 1) / TruncatedSeries::linear(Scalar(1), Scalar(1), order - 1);
  std::vector<Scalar> chi(order + 1, Scalar(0));
  for (std::size_t k = 0; k < order; ++k) chi[k + 1] = q[k];
  const auto psi = series_reversion(TruncatedSeries(std::move(chi)));
  std::vector<Scalar> m(psi.coeffs().begin() + 1, psi.coeffs().end());
  return MomentSeq(std::move(m));
}

CumulantSeq free_cumulant_series(const DistSpec& mu, std::size_t order) {
  return free_cumulants_from_moments(moments_of(mu, order));
}

HalfSeries s_transform_of(const DistSpec& mu, std::size_t order) {
  if (order == 0) throw Error(ErrorCode::TooShort, "order must be >= 1");
  if (const auto* e = mu.get_if<CatalogEntry>()) {
    try {
      return catalog_s_transform(*e, order - 1);
    } catch (const Error& err) {
      if (err.code() != ErrorCode::NoClosedForm) throw;
    }
  }
  if (mu.get_if<SymmetricCarrierSpec>() || is_symmetric_spec(mu, std::min(2 * order, mu.intrinsic_order())))
    return s_sym_from_carrier(moments_of(carrier_of(mu, order), order));
  return {false, s_from_moments(moments_of(mu, order))};
}

Verdict s_monotone_check(const std::function<double(double)>& s, std::size_t grid_size) {
  if (grid_size == 0) throw Error(ErrorCode::EvaluationFailure, "empty grid");
  const double h = 1.0 / (4.0 * static_cast<double>(grid_size));
  std::vector<double> t(grid_size), derivative(grid_size);
  double max_abs = 0.0;
  for (std::size_t i = 0; i < grid_size; ++i) {
    t[i] = -1.0 + static_cast<double>(i + 1) / static_cast<double>(grid_size + 1);
    const double lo = s(t[i] - h), mid = s(t[i]), hi = s(t[i] + h);
    if (!std::isfinite(lo) || !std::isfinite(mid) || !std::isfinite(hi))
      throw Error(ErrorCode::EvaluationFailure, "S is not finite near t = " + std::to_string(t[i]));
    derivative[i] = (hi - lo) / (2.0 * h);
    max_abs = std::max({max_abs, std::fabs(lo), std::fabs(mid), std::fabs(hi)});
  }
  Verdict v;
  const double tol = 1e-9 * max_abs;
  for (std::size_t i = 0; i < grid_size; ++i) {
    if (derivative[i] > tol) {
      v.outcome = Outcome::Rejected;
      v.grid_point = t[i];
      std::ostringstream os;
      os.precision(12);
      os << "S increases on (-1,0): S'(" << t[i] << ") ~ " << derivative[i] << " > 0";
      v.witness = os.str();
      return v;
    }
  }
  v.witness = "S non-increasing at " + std::to_string(grid_size) + " grid points of (-1,0)";
  return v;
}

}  // namespace freeconv
