#include "freeconv/classify.hpp"

#include "freeconv/convolution.hpp"
#include "freeconv/error.hpp"
#include "freeconv/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace freeconv {

namespace {

const TruncatedSeries one_plus_z(std::size_t order) { return TruncatedSeries::linear(Scalar(1), Scalar(1), order); }

Scalar exact_determinant(std::vector<std::vector<Scalar>> a) {
  const std::size_t n = a.size();
  Scalar det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col].is_zero()) ++pivot;
    if (pivot == n) return Scalar(0);
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r][col].is_zero()) continue;
      const Scalar f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  return det;
}

double float_determinant(std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  double det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
    if (a[pivot][col] == 0.0) return 0.0;
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  return det;
}

// Determinant sign test of the k x k matrix (s_{i+j+shift}).
std::optional<HankelFailure> check_minor(std::span<const Scalar> seq, std::size_t k, std::size_t shift, bool exact,
                                         double tol) {
  const HankelKind kind = shift == 0 ? HankelKind::Hamburger : HankelKind::Shifted;
  if (exact) {
    std::vector<std::vector<Scalar>> h(k, std::vector<Scalar>(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) h[i][j] = seq[i + j + shift];
    const Scalar det = exact_determinant(std::move(h));
    if (det.sign() < 0) return HankelFailure{kind, k, det};
    return std::nullopt;
  }
  std::vector<std::vector<double>> h(k, std::vector<double>(k));
  double max_abs = 0.0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      h[i][j] = seq[i + j + shift].to_double();
      max_abs = std::max(max_abs, std::fabs(h[i][j]));
    }
  const double det = float_determinant(std::move(h));
  if (det < -tol * max_abs) return HankelFailure{kind, k, Scalar::real(det)};
  return std::nullopt;
}

std::string index_label(const std::string& symbol, std::size_t offset) {
  return symbol + "_{i+j" + (offset == 0 ? std::string() : "+" + std::to_string(offset)) + "}";
}

// Hankel test of seq with entry 0 standing for symbol_{offset}.
Verdict labelled_hankel(std::span<const Scalar> seq, HankelMode mode, double tol, const std::string& symbol,
                        std::size_t offset) {
  if (seq.empty()) throw Error(ErrorCode::TooShort, "empty sequence");
  bool exact = std::all_of(seq.begin(), seq.end(), [](const Scalar& s) { return s.is_exact(); });
  const std::size_t last = seq.size() - 1;
  Verdict v;
  std::size_t minors = 0;
  for (std::size_t k = 1; 2 * k - 2 <= last; ++k, ++minors)
    if (auto f = check_minor(seq, k, 0, exact, tol)) v.failures.push_back(*f);
  if (mode == HankelMode::Stieltjes)
    for (std::size_t k = 1; 2 * k - 1 <= last; ++k, ++minors)
      if (auto f = check_minor(seq, k, 1, exact, tol)) v.failures.push_back(*f);
  v.tested_order = last + offset;
  if (v.failures.empty()) {
    v.witness = std::to_string(minors) + " leading Hankel minors non-negative through " + symbol + "_" +
                std::to_string(last + offset);
    return v;
  }
  const auto& f = v.failures.front();
  v.outcome = Outcome::Rejected;
  const std::size_t shift = offset + (f.kind == HankelKind::Shifted ? 1 : 0);
  v.witness = std::to_string(f.size) + "x" + std::to_string(f.size) + " Hankel det(" + index_label(symbol, shift) +
              ") = " + f.determinant.to_string() + " < 0";
  return v;
}

std::vector<Scalar> with_unit_mass(const MomentSeq& m) {
  std::vector<Scalar> seq{Scalar(1)};
  seq.insert(seq.end(), m.values().begin(), m.values().end());
  if (!m.is_exact())
    for (auto& s : seq) s = to_float(s);
  return seq;
}

Verdict realizable_on_half_line(const MomentSeq& m) {
  const auto seq = with_unit_mass(m);
  return labelled_hankel(seq, HankelMode::Stieltjes, kHankelTolerance, "m", 0);
}

MomentSeq carrier_moments(const DistSpec& mu, std::size_t order) {
  return moments_of(carrier_of(mu, order), order);
}

void prefix_witness(Verdict& v, const std::string& prefix) { v.witness = prefix + v.witness; }

}  // namespace

Verdict hankel_psd_sequence(std::span<const Scalar> seq, HankelMode mode, double tol) {
  return labelled_hankel(seq, mode, tol, "s", 0);
}

Verdict hankel_psd(const MomentSeq& m, HankelMode mode, double tol) {
  if (m.order() < 2) throw Error(ErrorCode::TooShort, "a 2x2 Hankel matrix needs m_1 and m_2");
  const auto seq = with_unit_mass(m);
  return labelled_hankel(seq, mode, tol, "m", 0);
}

Verdict free_id_test(const DistSpec& mu, std::size_t order) {
  if (order < 2) throw Error(ErrorCode::TooShort, "free_id_test needs order >= 2");
  const auto kappa = free_cumulant_series(mu, order);
  const std::vector<Scalar> shifted(kappa.values().begin() + 1, kappa.values().end());
  auto v = labelled_hankel(shifted, HankelMode::Hamburger, kHankelTolerance, "κ", 2);
  v.tested_order = order;
  return v;
}

Verdict free_regular_test(const DistSpec& mu, std::size_t order) {
  if (order < 2) throw Error(ErrorCode::TooShort, "free_regular_test needs order >= 2");
  const auto kappa = free_cumulant_series(mu, order);
  const std::vector<Scalar> shifted(kappa.values().begin() + 1, kappa.values().end());
  auto v = labelled_hankel(shifted, HankelMode::Stieltjes, kHankelTolerance, "κ", 2);
  v.tested_order = order;
  const Scalar& k1 = kappa.at(1);
  const bool negative_drift = k1.is_exact() ? k1.sign() < 0 : k1.to_double() < -kHankelTolerance;
  if (negative_drift) {
    v.outcome = Outcome::Rejected;
    v.witness = "κ_1 = " + k1.to_string() + " < 0";
  }
  return v;
}

Verdict box2div_test(const DistSpec& sigma, std::size_t order) {
  const auto m = moments_of(sigma, order);
  if (m.order() == 0 || m.at(1).is_zero()) throw Error(ErrorCode::ZeroFirstMoment, "m_1 = 0");
  const auto candidate = series_sqrt(s_from_moments(m));
  const auto candidate_moments = moments_from_s(candidate, order);
  auto v = realizable_on_half_line(candidate_moments);
  prefix_witness(v, "square-root candidate: ");
  v.tested_order = order;
  v.candidate_s = candidate;
  v.candidate_moments = candidate_moments;
  return v;
}

Verdict wigner_mixture_test(const DistSpec& mu, std::size_t order, std::size_t grid) {
  const auto carrier = carrier_moments(mu, order);
  const auto t_squared = one_plus_z(order - 1) * s_from_moments(carrier);
  const auto candidate = series_sqrt(t_squared);
  const auto candidate_moments = moments_from_s(candidate, order);
  auto v = realizable_on_half_line(candidate_moments);
  prefix_witness(v, "λ candidate: ");
  v.tested_order = order;
  v.candidate_s = candidate;
  v.candidate_moments = candidate_moments;
  if (const auto* e = mu.get_if<CatalogEntry>()) {
    if (const auto closed = catalog_closed_form_s(*e); closed && closed->half) {
      const auto monotone = s_monotone_check(closed->body, grid);
      if (monotone.rejected()) {
        v.outcome = Outcome::Rejected;
        v.grid_point = monotone.grid_point;
        v.witness = "S_λ = S_μ / S_w: " + monotone.witness;
      }
    }
  }
  return v;
}

Verdict type_w_test(const DistSpec& sigma_bar, std::size_t order) {
  auto v = free_regular_test(boxtimes_pos(sigma_bar, sigma_bar, order), order);
  prefix_witness(v, "σ̄ ⊠ σ̄: ");
  return v;
}

Verdict type_as_test(const DistSpec& mu, std::size_t order) {
  const auto carrier = carrier_moments(mu, order);
  const auto t_squared = one_plus_z(order - 1) * s_from_moments(carrier);
  const auto lambda_s = series_sqrt(t_squared / TruncatedSeries::linear(Scalar(2), Scalar(1), order - 1));
  const auto lambda_moments = moments_from_s(lambda_s, order);
  auto lambda_verdict = realizable_on_half_line(lambda_moments);
  auto sigma_verdict = free_regular_test(DistSpec(moments_from_s(t_squared, order)), order);

  Verdict v;
  v.tested_order = order;
  v.candidate_s = lambda_s;
  v.candidate_moments = lambda_moments;
  v.failures = lambda_verdict.failures;
  v.failures.insert(v.failures.end(), sigma_verdict.failures.begin(), sigma_verdict.failures.end());
  if (lambda_verdict.rejected()) {
    v.outcome = Outcome::Rejected;
    v.witness = "λ with λ ⊠ a = μ: " + lambda_verdict.witness;
  } else if (sigma_verdict.rejected()) {
    v.outcome = Outcome::Rejected;
    v.witness = "σ with S_σ = z S_μ²: " + sigma_verdict.witness;
  } else {
    v.witness = "λ: " + lambda_verdict.witness + "; σ: " + sigma_verdict.witness;
  }
  return v;
}

}  // namespace freeconv
