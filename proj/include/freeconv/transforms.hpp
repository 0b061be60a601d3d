#pragma once

// Ψ, χ and S-transforms, the symmetric S-transform, free cumulant series and
// the sign test on closed-form S-transforms.

#include "freeconv/measures.hpp"
#include "freeconv/series.hpp"
#include "freeconv/verdict.hpp"

#include <cstddef>
#include <functional>

namespace freeconv {

/// Σ_{n≥1} m_n z^n, order N.
TruncatedSeries psi_from_moments(const MomentSeq& m);

/// χ(z)(1+z)/z with χ the reversion of Ψ; order N-1, S(0) = 1/m_1.
/// Throws ZeroFirstMoment.
TruncatedSeries s_from_moments(const MomentSeq& m);

/// z^(-1/2) √((1+z) S_ρ(z)) for the symmetric law with square push-forward ρ.
HalfSeries s_sym_from_carrier(const MomentSeq& carrier);

/// m_1..m_N of the law with S-transform S (which needs order >= N-1).
/// Throws NonpositiveConstant when S(0) <= 0.
MomentSeq moments_from_s(const TruncatedSeries& s, std::size_t order);

CumulantSeq free_cumulant_series(const DistSpec& mu, std::size_t order);

/// S-transform of a law to order N-1: the closed form for catalog entries
/// that have one, the carrier route for symmetric laws, moments otherwise.
HalfSeries s_transform_of(const DistSpec& mu, std::size_t order);

/// Rejected when a central difference of S on (-1, 0) is positive beyond
/// 1e-9 max|S|. Throws EvaluationFailure on non-finite values.
Verdict s_monotone_check(const std::function<double(double)>& s, std::size_t grid_size);

}  // namespace freeconv
