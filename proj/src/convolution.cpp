#include "freeconv/convolution.hpp"

#include "freeconv/classify.hpp"
#include "freeconv/error.hpp"
#include "freeconv/transforms.hpp"

namespace freeconv {

namespace {

DistSpec from_free_cumulants(std::vector<Scalar> kappa) {
  return DistSpec(moments_from_free_cumulants(CumulantSeq(std::move(kappa))));
}

std::vector<Scalar> to_vector(const CumulantSeq& k) { return {k.values().begin(), k.values().end()}; }

void require_positive_mean(const MomentSeq& m) {
  if (m.order() == 0 || m.at(1).is_zero()) throw Error(ErrorCode::ZeroFirstMoment, "m_1 = 0");
  if (m.at(1).sign() < 0) throw Error(ErrorCode::InvalidParams, "law on [0, ∞) with m_1 > 0 required");
}

}  // namespace

DistSpec boxplus(const DistSpec& mu, const DistSpec& nu, std::size_t order) {
  auto kappa = to_vector(free_cumulant_series(mu, order));
  const auto other = free_cumulant_series(nu, order);
  for (std::size_t n = 1; n <= order; ++n) kappa[n - 1] += other.at(n);
  return from_free_cumulants(std::move(kappa));
}

DistSpec boxplus_power(const DistSpec& mu, const Scalar& c, std::size_t order) {
  if (c.sign() <= 0) throw Error(ErrorCode::InvalidExponent, "exponent must be > 0");
  if (less(c, Scalar(1))) {
    const auto verdict = free_id_test(mu, order);
    if (verdict.rejected())
      throw Error(ErrorCode::InvalidExponent, "exponent < 1 needs a ⊞-infinitely divisible law: " + verdict.witness);
  }
  auto kappa = to_vector(free_cumulant_series(mu, order));
  for (auto& k : kappa) k *= c;
  return from_free_cumulants(std::move(kappa));
}

DistSpec boxtimes_pos(const DistSpec& mu, const DistSpec& nu, std::size_t order) {
  const auto m = moments_of(mu, order);
  const auto n = moments_of(nu, order);
  require_positive_mean(m);
  require_positive_mean(n);
  return DistSpec(moments_from_s(s_from_moments(m) * s_from_moments(n), order));
}

DistSpec boxtimes_sym(const DistSpec& lambda, const DistSpec& mu, std::size_t order) {
  const auto carrier = carrier_of(mu, order);
  return DistSpec::symmetric(boxtimes_pos(lambda, boxtimes_pos(carrier, lambda, order), order));
}

DistSpec compound_poisson(const Scalar& c, const DistSpec& jump, std::size_t order) {
  if (c.sign() <= 0) throw Error(ErrorCode::InvalidParams, "rate must be > 0");
  const auto m = moments_of(jump, order);
  std::vector<Scalar> kappa(m.values().begin(), m.values().end());
  for (auto& k : kappa) k *= c;
  return from_free_cumulants(std::move(kappa));
}

DistSpec bp_lambda(const DistSpec& mu, std::size_t order) {
  return from_free_cumulants(to_vector(classical_cumulants_from_moments(moments_of(mu, order))));
}

DistSpec main1_pos_to_sym(const DistSpec& sigma, std::size_t order) {
  const auto verdict = free_regular_test(sigma, order);
  if (verdict.rejected()) throw Error(ErrorCode::NotFreeRegular, verdict.witness);
  const auto kappa = free_cumulant_series(sigma, order);
  std::vector<Scalar> sym(2 * order, Scalar(0));
  for (std::size_t n = 1; n <= order; ++n) sym[2 * n - 1] = kappa.at(n);
  const auto m = moments_from_free_cumulants(CumulantSeq(std::move(sym)));
  std::vector<Scalar> carrier;
  for (std::size_t n = 1; n <= order; ++n) carrier.push_back(m.at(2 * n));
  return DistSpec::symmetric(DistSpec::moments(std::move(carrier)));
}

DistSpec main1_sym_to_pos(const DistSpec& mu, std::size_t order) {
  const auto carrier = moments_of(carrier_of(mu, order), order);
  std::vector<Scalar> m(2 * order, Scalar(0));
  for (std::size_t n = 1; n <= order; ++n) m[2 * n - 1] = carrier.at(n);
  const auto kappa = free_cumulants_from_moments(MomentSeq(std::move(m)));
  std::vector<Scalar> half;
  for (std::size_t n = 1; n <= order; ++n) half.push_back(kappa.at(2 * n));
  return from_free_cumulants(std::move(half));
}

LevyTriplet main1_triplet_pos_to_sym(const LevyTriplet& sigma) {
  const auto* nu = std::get_if<FiniteMeasure>(&sigma.nu);
  if (!nu) throw Error(ErrorCode::InvalidParams, "discrete Lévy measure required");
  if (!sigma.is_regular_positive()) throw Error(ErrorCode::NotFreeRegular, "triplet is not free regular");
  Scalar drift = sigma.b;
  for (const auto& atom : nu->atoms())
    if (!less(Scalar(1), atom.location)) drift -= atom.weight * atom.location;
  LevyTriplet mu;
  mu.a = drift;
  mu.nu = symmetrize_levy(*nu);
  mu.b = Scalar(0);
  return mu;
}

LevyTriplet main1_triplet_sym_to_pos(const LevyTriplet& mu) {
  const auto* nu = std::get_if<FiniteMeasure>(&mu.nu);
  if (!nu) throw Error(ErrorCode::InvalidParams, "discrete Lévy measure required");
  if (!mu.b.is_zero()) throw Error(ErrorCode::AsymmetricInput, "symmetric triplet has b = 0");
  LevyTriplet sigma;
  sigma.a = Scalar(0);
  sigma.nu = desymmetrize_levy(*nu);
  Scalar b = mu.a;
  for (const auto& atom : std::get<FiniteMeasure>(sigma.nu).atoms())
    if (!less(Scalar(1), atom.location)) b += atom.weight * atom.location;
  sigma.b = b;
  return sigma;
}

std::pair<DistSpec, DistSpec> type_g_from_mixing(const FiniteMeasure& mixing, std::size_t order) {
  std::vector<Scalar> kappa(order, Scalar(0));
  for (const auto& atom : mixing.atoms()) {
    if (atom.location.sign() <= 0) throw Error(ErrorCode::NegativeScale, "mixing scales must be > 0");
    const auto m = catalog_moments(CatalogEntry::gamma_half(atom.location), order);
    for (std::size_t n = 1; n <= order; ++n) kappa[n - 1] += atom.weight * m.at(n);
  }
  DistSpec sigma = from_free_cumulants(std::move(kappa));
  DistSpec mu = main1_pos_to_sym(sigma, order);
  return {std::move(sigma), std::move(mu)};
}

bool same_law(const DistSpec& a, const DistSpec& b, std::size_t order, double tol) {
  return seq_equal(moments_of(a, order).values(), moments_of(b, order).values(), tol);
}

std::optional<CatalogEntry> recognize(const DistSpec& mu, const std::vector<CatalogEntry>& candidates,
                                      std::size_t order, double tol) {
  for (const auto& e : candidates)
    if (same_law(mu, DistSpec(e), order, tol)) return e;
  return std::nullopt;
}

}  // namespace freeconv
