#pragma once

// Moment/cumulant conversions (free and classical) and Fuss-Catalan numbers.
//
// The conversions are ring recursions: they never introduce floats, so
// exact input gives exact output.

#include "freeconv/scalar.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace freeconv {

/// Sequence s_1..s_N; index 0 of the storage is s_1.
template <class Tag>
class IndexedSeq {
 public:
  IndexedSeq() = default;
  explicit IndexedSeq(std::vector<Scalar> values) : values_(std::move(values)) {}

  std::size_t order() const { return values_.size(); }
  /// One-based access: at(1) is the first element.
  const Scalar& at(std::size_t n) const { return values_.at(n - 1); }
  std::span<const Scalar> values() const { return values_; }
  bool is_exact() const {
    for (const auto& v : values_)
      if (!v.is_exact()) return false;
    return true;
  }
  IndexedSeq truncate(std::size_t n) const;

 private:
  std::vector<Scalar> values_;
};

struct MomentTag {};
struct CumulantTag {};
/// Raw moments m_1..m_N (m_0 = 1 implicit).
using MomentSeq = IndexedSeq<MomentTag>;
/// Cumulants κ_1..κ_N.
using CumulantSeq = IndexedSeq<CumulantTag>;

/// A_m(p,r) = r/m! * prod_{i=1}^{m-1} (m p + r - i), A_0 = 1.
Scalar fuss_catalan(const Scalar& p, const Scalar& r, unsigned m);

MomentSeq moments_from_free_cumulants(const CumulantSeq& kappa);
CumulantSeq free_cumulants_from_moments(const MomentSeq& m);

MomentSeq moments_from_classical_cumulants(const CumulantSeq& c);
CumulantSeq classical_cumulants_from_moments(const MomentSeq& m);

/// Binomial coefficient as an exact Scalar.
Scalar binomial(unsigned n, unsigned k);

bool seq_equal(std::span<const Scalar> a, std::span<const Scalar> b, double tol = 0.0);

}  // namespace freeconv
