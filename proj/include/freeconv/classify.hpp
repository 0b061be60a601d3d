#pragma once

// Moment-problem tests and the classification procedures built on them.

#include "freeconv/measures.hpp"
#include "freeconv/verdict.hpp"

#include <cstddef>
#include <span>

namespace freeconv {

enum class HankelMode { Hamburger, Stieltjes };

inline constexpr double kHankelTolerance = 1e-9;
inline constexpr std::size_t kDefaultGrid = 64;

/// Leading minors of (s_{i+j}) and, in Stieltjes mode, of (s_{i+j+1}) for a
/// sequence s_0..s_K. Exact sequences use exact signs; float sequences reject
/// det < -tol * max|H|. A zero determinant is not a failure.
Verdict hankel_psd_sequence(std::span<const Scalar> seq, HankelMode mode, double tol = kHankelTolerance);

/// Same test for m_0 = 1, m_1..m_N. Throws TooShort when N < 2.
Verdict hankel_psd(const MomentSeq& m, HankelMode mode, double tol = kHankelTolerance);

/// (κ_{n+2})_{n≥0} must be a Hamburger sequence; its 2x2 minor is κ2κ4 - κ3².
Verdict free_id_test(const DistSpec& mu, std::size_t order);

/// κ_1 >= 0 and (κ_{n+2})_{n≥0} a Stieltjes sequence.
Verdict free_regular_test(const DistSpec& mu, std::size_t order);

/// Builds the square root S-transform candidate and tests its moments.
Verdict box2div_test(const DistSpec& sigma, std::size_t order);

/// Candidate λ with λ ⊠ w = μ; also applies the monotonicity check to the
/// closed-form S-transform when μ is a catalog entry.
Verdict wigner_mixture_test(const DistSpec& mu, std::size_t order, std::size_t grid = kDefaultGrid);

/// free_regular_test of σ̄ ⊠ σ̄.
Verdict type_w_test(const DistSpec& sigma_bar, std::size_t order);

/// λ with λ ⊠ a = μ must be realizable on [0, ∞), and σ with
/// S_σ = (1+z) S_{μ^(2)} must pass free_regular_test.
Verdict type_as_test(const DistSpec& mu, std::size_t order);

}  // namespace freeconv
