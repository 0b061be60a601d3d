#pragma once

// Free additive and multiplicative convolutions, free compound Poisson laws,
// the Bercovici-Pata map and the correspondence between free regular laws
// and symmetric free infinitely divisible laws.

#include "freeconv/measures.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace freeconv {

/// Free cumulants add.
DistSpec boxplus(const DistSpec& mu, const DistSpec& nu, std::size_t order);

/// Free cumulants scaled by c. For c < 1 the law must pass free_id_test,
/// otherwise InvalidExponent.
DistSpec boxplus_power(const DistSpec& mu, const Scalar& c, std::size_t order);

/// Product of S-transforms of two laws with positive mean.
DistSpec boxtimes_pos(const DistSpec& mu, const DistSpec& nu, std::size_t order);

/// λ ⊠ μ for symmetric μ, as the symmetric law with carrier λ ⊠ μ^(2) ⊠ λ
/// (carrier computed to the given order).
DistSpec boxtimes_sym(const DistSpec& lambda, const DistSpec& mu, std::size_t order);

/// κ_n = c m_n(jump).
DistSpec compound_poisson(const Scalar& c, const DistSpec& jump, std::size_t order);

/// Classical cumulants read as free cumulants.
DistSpec bp_lambda(const DistSpec& mu, std::size_t order);

/// Symmetric μ with κ_{2n}(μ) = κ_n(σ) and odd cumulants 0; carrier of the
/// given order. Throws NotFreeRegular when free_regular_test rejects σ.
DistSpec main1_pos_to_sym(const DistSpec& sigma, std::size_t order);

/// σ with κ_n(σ) = κ_{2n}(μ), n <= order. Throws AsymmetricInput.
DistSpec main1_sym_to_pos(const DistSpec& mu, std::size_t order);

/// The same correspondence on free triplets with discrete Lévy measure.
LevyTriplet main1_triplet_pos_to_sym(const LevyTriplet& sigma);
LevyTriplet main1_triplet_sym_to_pos(const LevyTriplet& mu);

/// σ with κ_n(σ) = Σ w_i m_n(gamma_half(s_i)) and μ = main1_pos_to_sym(σ).
/// Throws NegativeScale when some s_i <= 0.
std::pair<DistSpec, DistSpec> type_g_from_mixing(const FiniteMeasure& mixing, std::size_t order);

/// Moments agree to the given order (exactly when both are exact, else within tol).
bool same_law(const DistSpec& a, const DistSpec& b, std::size_t order, double tol = 1e-12);

/// First catalog entry whose moments agree with μ to the given order.
std::optional<CatalogEntry> recognize(const DistSpec& mu, const std::vector<CatalogEntry>& candidates,
                                      std::size_t order, double tol = 1e-12);

}  // namespace freeconv
