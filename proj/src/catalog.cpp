#include "freeconv/catalog.hpp"

#include "freeconv/error.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace freeconv {

namespace {

struct FamilyInfo {
  Family family;
  std::string_view name;
  std::size_t arity;
};

constexpr std::array<FamilyInfo, 11> kFamilies{{
    {Family::Wigner, "wigner", 2},
    {Family::MarchenkoPastur, "marchenko_pastur", 1},
    {Family::ArcsineSym, "arcsine_sym", 1},
    {Family::ArcsinePos, "arcsine_pos", 1},
    {Family::BernoulliSym, "bernoulli_sym", 0},
    {Family::BetaSym, "beta_sym", 1},
    {Family::Mlotkowski, "mlotkowski", 2},
    {Family::Gaussian, "gaussian", 2},
    {Family::PoissonClassical, "poisson_classical", 1},
    {Family::GammaHalf, "gamma_half", 1},
    {Family::PointMass, "point_mass", 1},
}};

const FamilyInfo& info(Family f) {
  for (const auto& i : kFamilies)
    if (i.family == f) return i;
  throw std::logic_error("unknown family");
}

void require_positive(const Scalar& v, std::string_view what) {
  if (v.sign() <= 0) throw Error(ErrorCode::InvalidParams, std::string(what) + " must be > 0");
}

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Reflection and symmetric zero padding of a moment list.
MomentSeq apply_reflection(const CatalogEntry& e, std::vector<Scalar> m) {
  if (e.reflected())
    for (std::size_t n = 1; n <= m.size(); ++n)
      if (n % 2 == 1) m[n - 1] = -m[n - 1];
  return MomentSeq(std::move(m));
}

// Even-only moments m_{2k} = f(k), odd moments zero.
template <class F>
std::vector<Scalar> even_moments(std::size_t order, F&& f) {
  std::vector<Scalar> m(order, Scalar(0));
  for (std::size_t n = 2; n <= order; n += 2) m[n - 1] = f(static_cast<unsigned>(n / 2));
  return m;
}

// C(2n, n) / 4^n.
Scalar central_binomial_ratio(unsigned n) { return binomial(2 * n, n) / pow(Scalar(4), n); }

}  // namespace

CatalogEntry CatalogEntry::make(std::string_view name, std::vector<Scalar> params) {
  const FamilyInfo* found = nullptr;
  for (const auto& i : kFamilies)
    if (i.name == name) found = &i;
  if (!found) throw Error(ErrorCode::InvalidParams, "unknown catalog family '" + std::string(name) + "'");
  if (params.size() != found->arity)
    throw Error(ErrorCode::InvalidParams, std::string(name) + " takes " + std::to_string(found->arity) + " parameter(s)");

  switch (found->family) {
    case Family::Wigner:
    case Family::Gaussian:
      require_positive(params[1], "variance a");
      break;
    case Family::MarchenkoPastur:
    case Family::PoissonClassical:
      require_positive(params[0], "rate c");
      break;
    case Family::ArcsineSym:
    case Family::ArcsinePos:
    case Family::BetaSym:
    case Family::GammaHalf:
      require_positive(params[0], "scale s");
      break;
    case Family::Mlotkowski:
      if (less(params[0], Scalar(1))) throw Error(ErrorCode::InvalidParams, "mlotkowski needs p >= 1");
      if (params[1].sign() < 0 || less(params[0], params[1]))
        throw Error(ErrorCode::InvalidParams, "mlotkowski needs 0 <= r <= p");
      break;
    case Family::BernoulliSym:
    case Family::PointMass:
      break;
  }
  return CatalogEntry(found->family, std::move(params));
}

std::string_view CatalogEntry::name() const { return info(family_).name; }

CatalogEntry CatalogEntry::reflect() const {
  CatalogEntry out = *this;
  out.reflected_ = !reflected_;
  return out;
}

bool CatalogEntry::is_symmetric() const {
  switch (family_) {
    case Family::ArcsineSym:
    case Family::BernoulliSym:
    case Family::BetaSym:
      return true;
    case Family::Wigner:
    case Family::Gaussian:
    case Family::PointMass:
      return params_[0].is_zero();
    default:
      return false;
  }
}

bool CatalogEntry::is_positive() const {
  if (is_symmetric()) return family_ == Family::PointMass;
  bool positive_family = false;
  switch (family_) {
    case Family::MarchenkoPastur:
    case Family::ArcsinePos:
    case Family::Mlotkowski:
    case Family::PoissonClassical:
    case Family::GammaHalf:
      positive_family = true;
      break;
    case Family::PointMass:
      positive_family = params_[0].sign() >= 0;
      break;
    case Family::Wigner:
      // Left edge b - 2 sqrt(a) >= 0.
      positive_family = params_[0].sign() > 0 && !less(params_[0] * params_[0], Scalar(4) * params_[1]);
      break;
    default:
      break;
  }
  return positive_family && !reflected_;
}

std::string CatalogEntry::to_string() const {
  std::string out(name());
  if (!params_.empty()) {
    out += "(";
    for (std::size_t i = 0; i < params_.size(); ++i) {
      if (i) out += ",";
      out += params_[i].to_string();
    }
    out += ")";
  }
  return reflected_ ? "reflect(" + out + ")" : out;
}

const std::vector<std::string_view>& catalog_names() {
  static const std::vector<std::string_view> names = [] {
    std::vector<std::string_view> v;
    for (const auto& i : kFamilies) v.push_back(i.name);
    return v;
  }();
  return names;
}

MomentSeq catalog_moments(const CatalogEntry& e, std::size_t order) {
  std::vector<Scalar> m;
  switch (e.family()) {
    case Family::Wigner: {
      std::vector<Scalar> kappa(order, Scalar(0));
      if (order >= 1) kappa[0] = e.param(0);
      if (order >= 2) kappa[1] = e.param(1);
      auto seq = moments_from_free_cumulants(CumulantSeq(kappa));
      m.assign(seq.values().begin(), seq.values().end());
      break;
    }
    case Family::MarchenkoPastur: {
      auto seq = moments_from_free_cumulants(CumulantSeq(std::vector<Scalar>(order, e.param(0))));
      m.assign(seq.values().begin(), seq.values().end());
      break;
    }
    case Family::ArcsineSym: {
      const Scalar s = e.param(0);
      m = even_moments(order, [&](unsigned k) { return pow(s, k) * central_binomial_ratio(k); });
      break;
    }
    case Family::ArcsinePos: {
      const Scalar s = e.param(0);
      for (unsigned n = 1; n <= order; ++n) m.push_back(pow(s, n) * central_binomial_ratio(n));
      break;
    }
    case Family::BernoulliSym:
      m = even_moments(order, [](unsigned) { return Scalar(1); });
      break;
    case Family::BetaSym: {
      // E[Y^j] for Y ~ Beta(1/2, 3/2) is prod_{i<j} (1/2 + i) / (2 + i).
      const Scalar four_s = Scalar(4) * e.param(0);
      m = even_moments(order, [&](unsigned k) {
        Scalar beta_moment(1);
        for (unsigned i = 0; i < 2 * k; ++i)
          beta_moment *= (Scalar::ratio(1, 2) + Scalar(i)) / Scalar(2 + i);
        return pow(four_s, k) * beta_moment;
      });
      break;
    }
    case Family::Mlotkowski:
      for (unsigned n = 1; n <= order; ++n) m.push_back(fuss_catalan(e.param(0), e.param(1), n));
      break;
    case Family::Gaussian: {
      // Hermite recursion m_n = b m_{n-1} + (n-1) a m_{n-2}.
      const Scalar b = e.param(0), a = e.param(1);
      Scalar prev2(1), prev1 = b;
      for (unsigned n = 1; n <= order; ++n) {
        Scalar cur = n == 1 ? b : b * prev1 + Scalar(n - 1) * a * prev2;
        m.push_back(cur);
        if (n > 1) {
          prev2 = prev1;
          prev1 = cur;
        }
      }
      break;
    }
    case Family::PoissonClassical: {
      auto seq = moments_from_classical_cumulants(CumulantSeq(std::vector<Scalar>(order, e.param(0))));
      m.assign(seq.values().begin(), seq.values().end());
      break;
    }
    case Family::GammaHalf: {
      // s^n (2n-1)!! / 2^n
      const Scalar s = e.param(0);
      Scalar acc(1);
      for (unsigned n = 1; n <= order; ++n) {
        acc *= s * Scalar(2 * n - 1) / Scalar(2);
        m.push_back(acc);
      }
      break;
    }
    case Family::PointMass:
      for (unsigned n = 1; n <= order; ++n) m.push_back(pow(e.param(0), n));
      break;
  }
  return apply_reflection(e, std::move(m));
}

HalfSeries catalog_s_transform(const CatalogEntry& e, std::size_t order) {
  auto no_closed_form = [&] {
    return Error(ErrorCode::NoClosedForm, "no closed-form S-transform for " + e.to_string());
  };
  if (e.reflected() && !e.is_symmetric()) throw no_closed_form();
  const Scalar one(1);
  switch (e.family()) {
    case Family::Wigner:
      if (!e.param(0).is_zero()) throw no_closed_form();
      // S = sqrt(1/(a z))
      return {true, TruncatedSeries::constant(sqrt(one / e.param(1)), order)};
    case Family::MarchenkoPastur:
      // S = 1/(z + c)
      return {false, series_inverse(TruncatedSeries::linear(e.param(0), one, order))};
    case Family::ArcsineSym: {
      // S = sqrt((z + 2)/(s z))
      const Scalar inv_s = one / e.param(0);
      return {true, series_sqrt(TruncatedSeries::linear(Scalar(2) * inv_s, inv_s, order))};
    }
    case Family::ArcsinePos:
      // S = (z + 2)/(s (z + 1))
      return {false, TruncatedSeries::linear(Scalar(2), one, order) /
                         TruncatedSeries::linear(e.param(0), e.param(0), order)};
    case Family::BernoulliSym:
      return {true, series_sqrt(TruncatedSeries::linear(one, one, order))};
    case Family::BetaSym: {
      // b_s = a_s ⊠ m
      const Scalar inv_s = one / e.param(0);
      return {true, series_sqrt(TruncatedSeries::linear(Scalar(2) * inv_s, inv_s, order)) /
                        TruncatedSeries::linear(one, one, order)};
    }
    case Family::PointMass:
      if (e.param(0).sign() <= 0) throw no_closed_form();
      return {false, TruncatedSeries::constant(one / e.param(0), order)};
    default:
      throw no_closed_form();
  }
}

std::optional<ClosedFormS> catalog_closed_form_s(const CatalogEntry& e) {
  if (e.reflected() && !e.is_symmetric()) return std::nullopt;
  switch (e.family()) {
    case Family::Wigner: {
      if (!e.param(0).is_zero()) return std::nullopt;
      const double a = e.param(1).to_double();
      return ClosedFormS{true, [a](double) { return 1.0 / std::sqrt(a); }};
    }
    case Family::MarchenkoPastur: {
      const double c = e.param(0).to_double();
      return ClosedFormS{false, [c](double t) { return 1.0 / (t + c); }};
    }
    case Family::ArcsineSym: {
      const double s = e.param(0).to_double();
      return ClosedFormS{true, [s](double t) { return std::sqrt((t + 2.0) / s); }};
    }
    case Family::ArcsinePos: {
      const double s = e.param(0).to_double();
      return ClosedFormS{false, [s](double t) { return (t + 2.0) / (s * (t + 1.0)); }};
    }
    case Family::BernoulliSym:
      return ClosedFormS{true, [](double t) { return std::sqrt(1.0 + t); }};
    case Family::BetaSym: {
      const double s = e.param(0).to_double();
      return ClosedFormS{true, [s](double t) { return std::sqrt((t + 2.0) / s) / (t + 1.0); }};
    }
    case Family::PointMass: {
      if (e.param(0).sign() <= 0) return std::nullopt;
      const double x = e.param(0).to_double();
      return ClosedFormS{false, [x](double) { return 1.0 / x; }};
    }
    default:
      return std::nullopt;
  }
}

double catalog_density(const CatalogEntry& e, double x) {
  if (e.reflected()) x = -x;
  switch (e.family()) {
    case Family::Wigner: {
      const double b = e.param(0).to_double(), a = e.param(1).to_double();
      const double u = x - b, edge = 2 * std::sqrt(a);
      const double r = (edge - u) * (edge + u);
      return r > 0 ? std::sqrt(r) / (2 * kPi * a) : 0.0;
    }
    case Family::MarchenkoPastur: {
      const double c = e.param(0).to_double();
      if (x <= 0) return 0.0;
      const double lo = (1 - std::sqrt(c)) * (1 - std::sqrt(c)), hi = (1 + std::sqrt(c)) * (1 + std::sqrt(c));
      const double r = (hi - x) * (x - lo);
      return r > 0 ? std::sqrt(r) / (2 * kPi * x) : 0.0;
    }
    case Family::ArcsineSym: {
      const double s = e.param(0).to_double();
      const double edge = std::sqrt(s);
      const double r = (edge - x) * (edge + x);
      return r > 0 ? 1.0 / (kPi * std::sqrt(r)) : 0.0;
    }
    case Family::ArcsinePos: {
      const double s = e.param(0).to_double();
      return (x > 0 && x < s) ? 1.0 / (kPi * std::sqrt(x * (s - x))) : 0.0;
    }
    case Family::BetaSym: {
      const double root_s = std::sqrt(e.param(0).to_double());
      const double u = std::fabs(x), edge = 2 * root_s;
      if (u <= 0 || u >= edge) return 0.0;
      return std::sqrt((edge - u) / u) / (2 * kPi * root_s);
    }
    case Family::Gaussian: {
      const double b = e.param(0).to_double(), a = e.param(1).to_double();
      return std::exp(-(x - b) * (x - b) / (2 * a)) / std::sqrt(2 * kPi * a);
    }
    case Family::GammaHalf: {
      const double s = e.param(0).to_double();
      return x > 0 ? std::exp(-x / s) / std::sqrt(kPi * s * x) : 0.0;
    }
    default:
      throw Error(ErrorCode::NoDensity, e.to_string() + " has no density");
  }
}

Scalar atom_at_zero(const CatalogEntry& e) {
  if (e.family() == Family::MarchenkoPastur && less(e.param(0), Scalar(1))) return Scalar(1) - e.param(0);
  return Scalar(0);
}

std::pair<double, double> catalog_support(const CatalogEntry& e) {
  std::pair<double, double> s{-kInf, kInf};
  switch (e.family()) {
    case Family::Wigner: {
      const double b = e.param(0).to_double(), r = 2 * std::sqrt(e.param(1).to_double());
      s = {b - r, b + r};
      break;
    }
    case Family::MarchenkoPastur: {
      const double c = e.param(0).to_double(), rc = std::sqrt(c);
      s = {c < 1 ? 0.0 : (1 - rc) * (1 - rc), (1 + rc) * (1 + rc)};
      break;
    }
    case Family::ArcsineSym: {
      const double r = std::sqrt(e.param(0).to_double());
      s = {-r, r};
      break;
    }
    case Family::ArcsinePos:
      s = {0.0, e.param(0).to_double()};
      break;
    case Family::BernoulliSym:
      s = {-1.0, 1.0};
      break;
    case Family::BetaSym: {
      const double r = 2 * std::sqrt(e.param(0).to_double());
      s = {-r, r};
      break;
    }
    case Family::Mlotkowski: {
      // Fuss-Catalan support [0, p^p / (p-1)^(p-1)].
      const double p = e.param(0).to_double();
      s = {0.0, p > 1 ? std::pow(p, p) / std::pow(p - 1, p - 1) : 1.0};
      break;
    }
    case Family::Gaussian:
      break;
    case Family::PoissonClassical:
    case Family::GammaHalf:
      s = {0.0, kInf};
      break;
    case Family::PointMass: {
      const double x = e.param(0).to_double();
      s = {x, x};
      break;
    }
  }
  if (e.reflected()) s = {-s.second, -s.first};
  return s;
}

}  // namespace freeconv
