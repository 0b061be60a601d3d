#include "freeconv/measures.hpp"

#include "freeconv/error.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

namespace freeconv {

namespace {

bool same_location(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return exact_equal(a, b);
  return a.to_double() == b.to_double();
}

// |x| > 1, exactly when x is exact.
bool outside_unit_interval(const Scalar& x) { return less(Scalar(1), abs(x)); }

// ∫_{|x|>1} x law(dx) for a catalog law, exact where the law allows it.
// ∫_a^b f over x = a + (b - a) sin^2(t/2); Gauss nodes stay off the edges
double integrate_arc(const std::function<double(double)>& f, double a, double b) {
  auto g = [&](double t) {
    const double s = std::sin(t / 2);
    return f(a + (b - a) * s * s) * (b - a) / 2 * std::sin(t);
  };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, 0.0, std::numbers::pi, 15, 1e-11);
}

Scalar tail_first_moment(const CatalogEntry& law) {
  const auto [lo, hi] = catalog_support(law);
  if (lo >= -1.0 && hi <= 1.0) return Scalar(0);
  switch (law.family()) {
    case Family::PointMass:
      return outside_unit_interval(law.param(0)) ? law.param(0) : Scalar(0);
    case Family::PoissonClassical: {
      // E[X; X > 1] = c - P(X = 1) = c - c e^{-c}
      const double c = law.param(0).to_double();
      double v = c - c * std::exp(-c);
      return Scalar::real(law.reflected() ? -v : v);
    }
    default:
      break;
  }
  // Density families: integrate x f(x) over the parts of the support beyond ±1.
  auto integrand = [&](double x) { return x * catalog_density(law, x); };
  double total = 0.0;
  if (hi > 1.0) {
    if (std::isinf(hi)) {
      boost::math::quadrature::exp_sinh<double> integrator;
      total += integrator.integrate([&](double x) { return integrand(x); }, 1.0, hi, 1e-12);
    } else {
      total += integrate_arc(integrand, 1.0, hi);
    }
  }
  if (lo < -1.0) {
    if (std::isinf(lo)) {
      boost::math::quadrature::exp_sinh<double> integrator;
      total -= integrator.integrate([&](double x) { return -integrand(-x); }, 1.0, -lo, 1e-12);
    } else {
      total += integrate_arc(integrand, lo, -1.0);
    }
  }
  return Scalar::real(total);
}

}  // namespace

FiniteMeasure::FiniteMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (atoms_[i].weight.sign() <= 0) throw Error(ErrorCode::InvalidParams, "atom weights must be > 0");
    for (std::size_t j = 0; j < i; ++j)
      if (same_location(atoms_[i].location, atoms_[j].location))
        throw Error(ErrorCode::InvalidParams, "atom locations must be distinct");
  }
}

Scalar FiniteMeasure::total_mass() const {
  Scalar m(0);
  for (const auto& a : atoms_) m += a.weight;
  return m;
}

Scalar FiniteMeasure::moment(unsigned n) const {
  Scalar m(0);
  for (const auto& a : atoms_) m += a.weight * pow(a.location, n);
  return m;
}

bool FiniteMeasure::is_symmetric() const {
  for (const auto& a : atoms_) {
    auto mirror = std::find_if(atoms_.begin(), atoms_.end(), [&](const Atom& b) {
      return same_location(b.location, -a.location);
    });
    if (mirror == atoms_.end()) return false;
    if (!identical(mirror->weight, a.weight) && !approx_equal(mirror->weight, a.weight, 1e-12)) return false;
  }
  return true;
}

FiniteMeasure FiniteMeasure::sorted() const {
  auto atoms = atoms_;
  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return less(a.location, b.location); });
  return FiniteMeasure(std::move(atoms));
}

FiniteMeasure FiniteMeasure::scaled(const Scalar& factor) const {
  auto atoms = atoms_;
  for (auto& a : atoms) a.weight *= factor;
  return FiniteMeasure(std::move(atoms));
}

bool measure_equal(const FiniteMeasure& a, const FiniteMeasure& b) {
  if (a.atoms().size() != b.atoms().size()) return false;
  const auto sa = a.sorted(), sb = b.sorted();
  for (std::size_t i = 0; i < sa.atoms().size(); ++i) {
    if (!identical(sa.atoms()[i].location, sb.atoms()[i].location)) return false;
    if (!identical(sa.atoms()[i].weight, sb.atoms()[i].weight)) return false;
  }
  return true;
}

void LevyTriplet::validate() const {
  if (a.sign() < 0) throw Error(ErrorCode::InvalidParams, "Gaussian part a must be >= 0");
  if (const auto* fm = std::get_if<FiniteMeasure>(&nu)) {
    for (const auto& atom : fm->atoms())
      if (atom.location.is_zero()) throw Error(ErrorCode::InvalidParams, "Lévy measure has an atom at 0");
  } else {
    const auto& scm = std::get<ScaledCatalogMeasure>(nu);
    if (scm.mass.sign() <= 0) throw Error(ErrorCode::InvalidParams, "Lévy mass must be > 0");
    const auto& law = scm.law;
    if (atom_at_zero(law).sign() > 0 || (law.family() == Family::PointMass && law.param(0).is_zero()) ||
        law.family() == Family::PoissonClassical)
      throw Error(ErrorCode::InvalidParams, "Lévy measure law " + law.to_string() + " charges 0");
  }
}

bool LevyTriplet::is_regular_positive() const {
  if (!a.is_zero()) return false;
  Scalar small_jumps(0);  // ∫_{|x|<=1} x dν
  if (const auto* fm = std::get_if<FiniteMeasure>(&nu)) {
    for (const auto& atom : fm->atoms()) {
      if (atom.location.sign() <= 0) return false;
      if (!outside_unit_interval(atom.location)) small_jumps += atom.weight * atom.location;
    }
  } else {
    const auto& scm = std::get<ScaledCatalogMeasure>(nu);
    if (!scm.law.is_positive()) return false;
    small_jumps = scm.mass * (catalog_moments(scm.law, 1).at(1) - tail_first_moment(scm.law));
  }
  // Drift without compensator: b - ∫_{|x|<=1} x dν.
  return (b - small_jumps).sign() >= 0;
}

CumulantSeq triplet_cumulants(const LevyTriplet& t, std::size_t order) {
  t.validate();
  std::vector<Scalar> kappa(order, Scalar(0));
  if (const auto* fm = std::get_if<FiniteMeasure>(&t.nu)) {
    for (std::size_t n = 1; n <= order; ++n) kappa[n - 1] = fm->moment(static_cast<unsigned>(n));
    if (order >= 1) {
      Scalar k1 = t.b;
      for (const auto& atom : fm->atoms())
        if (outside_unit_interval(atom.location)) k1 += atom.weight * atom.location;
      kappa[0] = k1;
    }
  } else {
    const auto& scm = std::get<ScaledCatalogMeasure>(t.nu);
    const auto law_moments = catalog_moments(scm.law, order);
    for (std::size_t n = 1; n <= order; ++n) kappa[n - 1] = scm.mass * law_moments.at(n);
    if (order >= 1) kappa[0] = t.b + scm.mass * tail_first_moment(scm.law);
  }
  if (order >= 2) kappa[1] += t.a;
  return CumulantSeq(std::move(kappa));
}

DistSpec::DistSpec(TripletSpec t) : node_(std::move(t)) {
  std::get<TripletSpec>(node_).triplet.validate();
}

DistSpec DistSpec::symmetric(DistSpec carrier) {
  return DistSpec(Node(SymmetricCarrierSpec{std::make_shared<const DistSpec>(std::move(carrier))}));
}

std::size_t DistSpec::intrinsic_order() const {
  return std::visit(
      [](const auto& n) -> std::size_t {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, MomentsSpec>) {
          return n.moments.order();
        } else if constexpr (std::is_same_v<T, SymmetricCarrierSpec>) {
          const std::size_t inner = n.carrier->intrinsic_order();
          return inner == kUnlimitedOrder ? kUnlimitedOrder : 2 * inner + 1;
        } else {
          return kUnlimitedOrder;
        }
      },
      node_);
}

MomentSeq moments_of(const DistSpec& mu, std::size_t order) {
  if (order > mu.intrinsic_order())
    throw Error(ErrorCode::UnsupportedOrder, "spec supplies only " + std::to_string(mu.intrinsic_order()) +
                                                 " moments, " + std::to_string(order) + " requested");
  return std::visit(
      [&](const auto& n) -> MomentSeq {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, MomentsSpec>) {
          return n.moments.truncate(order);
        } else if constexpr (std::is_same_v<T, CatalogEntry>) {
          return catalog_moments(n, order);
        } else if constexpr (std::is_same_v<T, SymmetricCarrierSpec>) {
          const auto carrier = moments_of(*n.carrier, order / 2);
          std::vector<Scalar> m(order, Scalar(0));
          for (std::size_t k = 1; 2 * k <= order; ++k) m[2 * k - 1] = carrier.at(k);
          if (!carrier.is_exact())
            for (auto& v : m) v = to_float(v);
          return MomentSeq(std::move(m));
        } else {
          const auto kappa = triplet_cumulants(n.triplet, order);
          return n.flavor == LevyFlavor::Free ? moments_from_free_cumulants(kappa)
                                              : moments_from_classical_cumulants(kappa);
        }
      },
      mu.node());
}

DistSpec reflect(const DistSpec& mu) {
  return std::visit(
      [&](const auto& n) -> DistSpec {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, MomentsSpec>) {
          std::vector<Scalar> m(n.moments.values().begin(), n.moments.values().end());
          for (std::size_t i = 0; i < m.size(); i += 2) m[i] = -m[i];
          return DistSpec::moments(std::move(m));
        } else if constexpr (std::is_same_v<T, CatalogEntry>) {
          return DistSpec(n.reflect());
        } else if constexpr (std::is_same_v<T, SymmetricCarrierSpec>) {
          return mu;
        } else {
          LevyTriplet t = n.triplet;
          t.b = -t.b;
          if (auto* fm = std::get_if<FiniteMeasure>(&t.nu)) {
            auto atoms = fm->atoms();
            for (auto& a : atoms) a.location = -a.location;
            t.nu = FiniteMeasure(std::move(atoms));
          } else {
            auto& scm = std::get<ScaledCatalogMeasure>(t.nu);
            scm.law = scm.law.reflect();
          }
          return DistSpec::triplet(std::move(t), n.flavor);
        }
      },
      mu.node());
}

DistSpec push_power(const DistSpec& mu, unsigned p, std::size_t order) {
  if (p == 0 || p % 2 != 0) throw Error(ErrorCode::InvalidParams, "push_power needs a positive even p");
  if (const auto* sym = mu.get_if<SymmetricCarrierSpec>(); sym && p == 2) {
    if (order > sym->carrier->intrinsic_order())
      throw Error(ErrorCode::InsufficientOrder, "carrier has too few moments");
    return *sym->carrier;
  }
  if (static_cast<double>(p) * static_cast<double>(order) > static_cast<double>(mu.intrinsic_order()))
    throw Error(ErrorCode::InsufficientOrder, "push_power needs " + std::to_string(p * order) + " moments");
  const auto m = moments_of(mu, p * order);
  std::vector<Scalar> out;
  out.reserve(order);
  for (std::size_t n = 1; n <= order; ++n) out.push_back(m.at(p * n));
  return DistSpec::moments(std::move(out));
}

bool is_symmetric_spec(const DistSpec& mu, std::size_t order) {
  if (mu.get_if<SymmetricCarrierSpec>()) return true;
  if (const auto* e = mu.get_if<CatalogEntry>(); e && e->is_symmetric()) return true;
  if (order > mu.intrinsic_order()) order = mu.intrinsic_order();
  const auto m = moments_of(mu, order);
  for (std::size_t n = 1; n <= order; n += 2) {
    const Scalar& v = m.at(n);
    if (v.is_exact()) {
      if (!v.is_zero()) return false;
    } else {
      // Float moments: compare with the neighbouring even moment.
      const double scale = std::max(1.0, n + 1 <= order ? std::fabs(m.at(n + 1).to_double()) : 1.0);
      if (std::fabs(v.to_double()) > 1e-9 * scale) return false;
    }
  }
  return true;
}

DistSpec carrier_of(const DistSpec& mu, std::size_t order) {
  if (const auto* sym = mu.get_if<SymmetricCarrierSpec>()) return *sym->carrier;
  if (!is_symmetric_spec(mu, 2 * order))
    throw Error(ErrorCode::AsymmetricInput, "odd moments do not vanish");
  return push_power(mu, 2, order);
}

std::pair<FiniteMeasure, FiniteMeasure> push_sqrt_split(const FiniteMeasure& nu) {
  std::vector<Atom> plus, minus;
  for (const auto& a : nu.atoms()) {
    if (a.location.sign() <= 0) throw Error(ErrorCode::NegativeSupport, "atom outside (0, ∞)");
    const Scalar r = sqrt(a.location);
    plus.push_back({r, a.weight});
    minus.push_back({-r, a.weight});
  }
  return {FiniteMeasure(std::move(plus)), FiniteMeasure(std::move(minus))};
}

FiniteMeasure symmetrize_levy(const FiniteMeasure& nu) {
  auto [plus, minus] = push_sqrt_split(nu);
  const Scalar half = Scalar::ratio(1, 2);
  std::vector<Atom> atoms;
  for (const auto& a : plus.atoms()) atoms.push_back({a.location, a.weight * half});
  for (const auto& a : minus.atoms()) atoms.push_back({a.location, a.weight * half});
  return FiniteMeasure(std::move(atoms));
}

// The σ-side measure is twice the square push of the positive half of ν,
// which equals the full square push of the symmetric ν.
FiniteMeasure desymmetrize_levy(const FiniteMeasure& nu) {
  if (!nu.is_symmetric()) throw Error(ErrorCode::AsymmetricInput, "Lévy measure is not symmetric");
  std::vector<Atom> atoms;
  for (const auto& a : nu.atoms())
    if (a.location.sign() > 0) atoms.push_back({a.location * a.location, Scalar(2) * a.weight});
  return FiniteMeasure(std::move(atoms));
}

std::function<double(double)> density_sqrt_push(std::function<double(double)> h) {
  return [h = std::move(h)](double x) { return x > 0 ? 2.0 * x * h(x * x) : 0.0; };
}

}  // namespace freeconv
