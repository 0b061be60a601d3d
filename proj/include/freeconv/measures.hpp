#pragma once

// Distribution descriptions, discrete Lévy measures and the push-forward /
// symmetrization maps relating symmetric laws to laws on (0, ∞).

#include "freeconv/catalog.hpp"
#include "freeconv/combinatorics.hpp"

#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <utility>
#include <variant>
#include <vector>

namespace freeconv {

struct Atom {
  Scalar location;
  Scalar weight;
};

/// Weighted atoms with strictly positive weights at distinct locations.
class FiniteMeasure {
 public:
  FiniteMeasure() = default;
  /// Validates weights and distinctness; merges nothing.
  explicit FiniteMeasure(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }
  Scalar total_mass() const;
  /// ∫ x^n dν.
  Scalar moment(unsigned n) const;
  /// Atoms closed under negation with equal weights.
  bool is_symmetric() const;
  /// Same atoms in a canonical (sorted) order, for comparisons.
  FiniteMeasure sorted() const;
  FiniteMeasure scaled(const Scalar& factor) const;

 private:
  std::vector<Atom> atoms_;
};

bool measure_equal(const FiniteMeasure& a, const FiniteMeasure& b);

/// Lévy measure given as mass * (catalog probability law).
struct ScaledCatalogMeasure {
  Scalar mass;
  CatalogEntry law;
};

using LevyMeasure = std::variant<FiniteMeasure, ScaledCatalogMeasure>;

enum class LevyFlavor { Free, Classical };

/// Generating triplet (a, ν, b).
struct LevyTriplet {
  Scalar a{0};
  LevyMeasure nu{FiniteMeasure{}};
  Scalar b{0};

  /// Throws InvalidParams if a < 0 or ν has an atom at 0.
  void validate() const;
  /// b >= 0, a = 0 and ν carried by (0, ∞).
  bool is_regular_positive() const;
};

/// Cumulants of a triplet: κ_1 = b + ∫_{|x|>1} x dν, κ_2 = a + ∫x² dν,
/// κ_n = ∫xⁿ dν. Free or classical according to the flavor of use.
CumulantSeq triplet_cumulants(const LevyTriplet& t, std::size_t order);

class DistSpec;

struct MomentsSpec {
  MomentSeq moments;
};

/// The symmetric law whose squared push-forward is `carrier`.
struct SymmetricCarrierSpec {
  std::shared_ptr<const DistSpec> carrier;
};

struct TripletSpec {
  LevyTriplet triplet;
  LevyFlavor flavor = LevyFlavor::Free;
};

class DistSpec {
 public:
  using Node = std::variant<MomentsSpec, CatalogEntry, SymmetricCarrierSpec, TripletSpec>;

  DistSpec(MomentSeq m) : node_(MomentsSpec{std::move(m)}) {}
  DistSpec(CatalogEntry e) : node_(std::move(e)) {}
  DistSpec(TripletSpec t);

  static DistSpec moments(std::vector<Scalar> values) { return DistSpec(MomentSeq(std::move(values))); }
  static DistSpec symmetric(DistSpec carrier);
  static DistSpec triplet(LevyTriplet t, LevyFlavor flavor = LevyFlavor::Free) {
    return DistSpec(TripletSpec{std::move(t), flavor});
  }

  const Node& node() const { return node_; }
  template <class T>
  const T* get_if() const { return std::get_if<T>(&node_); }

  /// Highest order moments_of can deliver.
  std::size_t intrinsic_order() const;

 private:
  explicit DistSpec(Node n) : node_(std::move(n)) {}
  Node node_;
};

inline constexpr std::size_t kUnlimitedOrder = std::numeric_limits<std::size_t>::max();

/// m_1..m_N. Throws UnsupportedOrder beyond intrinsic_order().
MomentSeq moments_of(const DistSpec& mu, std::size_t order);

/// B -> μ(-B).
DistSpec reflect(const DistSpec& mu);

/// Law of |x|^p, p a positive even integer. Throws InsufficientOrder when
/// μ cannot supply p * order moments.
DistSpec push_power(const DistSpec& mu, unsigned p, std::size_t order);

/// Carrier μ^(2) of a symmetric μ, with `order` moments. Throws
/// AsymmetricInput if an odd moment up to 2 * order is non-zero.
DistSpec carrier_of(const DistSpec& mu, std::size_t order);

/// True when every odd moment up to `order` vanishes exactly (or is
/// structurally zero).
bool is_symmetric_spec(const DistSpec& mu, std::size_t order);

/// Images of ν under √x and -√x. Throws NegativeSupport.
std::pair<FiniteMeasure, FiniteMeasure> push_sqrt_split(const FiniteMeasure& nu);

/// ½(ν^{1/2}+ + ν^{1/2}-).
FiniteMeasure symmetrize_levy(const FiniteMeasure& nu);

/// 2 ν^(2) for a symmetric ν (inverse of symmetrize_levy).
FiniteMeasure desymmetrize_levy(const FiniteMeasure& nu);

/// x -> 2x h(x²) for x > 0, zero elsewhere.
std::function<double(double)> density_sqrt_push(std::function<double(double)> h);

}  // namespace freeconv
