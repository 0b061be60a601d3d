#pragma once

// Named distributions with closed-form moments, S-transforms and densities.

#include "freeconv/combinatorics.hpp"
#include "freeconv/series.hpp"

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace freeconv {

enum class Family {
  Wigner,            // wigner(b, a): semicircle, mean b, variance a
  MarchenkoPastur,   // marchenko_pastur(c): free Poisson with rate c
  ArcsineSym,        // arcsine_sym(s): on (-sqrt s, sqrt s)
  ArcsinePos,        // arcsine_pos(s): on (0, s)
  BernoulliSym,      // bernoulli_sym: (δ_{-1} + δ_1)/2
  BetaSym,           // beta_sym(s): |X| / (2 sqrt s) ~ Beta(1/2, 3/2)
  Mlotkowski,        // mlotkowski(p, r): moments A_n(p, r)
  Gaussian,          // gaussian(b, a)
  PoissonClassical,  // poisson_classical(c)
  GammaHalf,         // gamma_half(s): shape 1/2, scale s
  PointMass,         // point_mass(x)
};

class CatalogEntry {
 public:
  /// Validates the family name and parameter domain; throws InvalidParams.
  static CatalogEntry make(std::string_view name, std::vector<Scalar> params);

  static CatalogEntry wigner(const Scalar& b, const Scalar& a) { return make("wigner", {b, a}); }
  static CatalogEntry marchenko_pastur(const Scalar& c) { return make("marchenko_pastur", {c}); }
  static CatalogEntry arcsine_sym(const Scalar& s) { return make("arcsine_sym", {s}); }
  static CatalogEntry arcsine_pos(const Scalar& s) { return make("arcsine_pos", {s}); }
  static CatalogEntry bernoulli_sym() { return make("bernoulli_sym", {}); }
  static CatalogEntry beta_sym(const Scalar& s) { return make("beta_sym", {s}); }
  static CatalogEntry mlotkowski(const Scalar& p, const Scalar& r) { return make("mlotkowski", {p, r}); }
  static CatalogEntry gaussian(const Scalar& b, const Scalar& a) { return make("gaussian", {b, a}); }
  static CatalogEntry poisson_classical(const Scalar& c) { return make("poisson_classical", {c}); }
  static CatalogEntry gamma_half(const Scalar& s) { return make("gamma_half", {s}); }
  static CatalogEntry point_mass(const Scalar& x) { return make("point_mass", {x}); }

  Family family() const { return family_; }
  std::string_view name() const;
  const std::vector<Scalar>& params() const { return params_; }
  const Scalar& param(std::size_t i) const { return params_.at(i); }

  /// The dual law B -> μ(-B).
  bool reflected() const { return reflected_; }
  CatalogEntry reflect() const;

  bool is_symmetric() const;
  /// Supported in [0, ∞).
  bool is_positive() const;

  /// e.g. "marchenko_pastur(1/2)" or "reflect(marchenko_pastur(1/2))".
  std::string to_string() const;

 private:
  CatalogEntry(Family f, std::vector<Scalar> p) : family_(f), params_(std::move(p)) {}

  Family family_;
  std::vector<Scalar> params_;
  bool reflected_ = false;
};

/// All catalog family names, in declaration order.
const std::vector<std::string_view>& catalog_names();

MomentSeq catalog_moments(const CatalogEntry& e, std::size_t order);

/// Closed-form S-transform expanded to the given order. Throws NoClosedForm.
HalfSeries catalog_s_transform(const CatalogEntry& e, std::size_t order);

/// Closed form of the S-transform on (-1, 0): S(t) = t^(-1/2) * body(t) when half.
struct ClosedFormS {
  bool half = false;
  std::function<double(double)> body;
};
std::optional<ClosedFormS> catalog_closed_form_s(const CatalogEntry& e);

/// Density of the absolutely continuous part. Throws NoDensity for atomic families.
double catalog_density(const CatalogEntry& e, double x);

/// Mass of the atom at 0 (free Poisson with c < 1); zero otherwise.
Scalar atom_at_zero(const CatalogEntry& e);

/// Closed support interval (may be infinite).
std::pair<double, double> catalog_support(const CatalogEntry& e);

}  // namespace freeconv
