#include "freeconv/rmt.hpp"

#include "freeconv/convolution.hpp"
#include "freeconv/error.hpp"

#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/gamma.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

namespace freeconv {

namespace {

using cd = std::complex<double>;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Uniform on the open interval (0, 1).
double uniform(std::mt19937_64& rng) { return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53; }

double standard_normal(std::mt19937_64& rng) {
  const double u = uniform(rng), v = uniform(rng);
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

// E|z|² = 1.
cd complex_normal(std::mt19937_64& rng) {
  return cd(standard_normal(rng), standard_normal(rng)) * std::numbers::sqrt2 * 0.5;
}

Eigen::MatrixXcd ginibre(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  Eigen::MatrixXcd g(rows, cols);
  for (Eigen::Index j = 0; j < g.cols(); ++j)
    for (Eigen::Index i = 0; i < g.rows(); ++i) g(i, j) = complex_normal(rng);
  return g;
}

// Inverse CDF of the absolutely continuous part of a catalog law, tabulated.
class TabulatedQuantile {
 public:
  TabulatedQuantile(const CatalogEntry& e, std::size_t cells = 2048) {
    const auto [lo, hi] = catalog_support(e);
    boost::math::quadrature::tanh_sinh<double> integrator;
    x_.resize(cells + 1);
    cdf_.assign(cells + 1, 0.0);
    for (std::size_t i = 0; i <= cells; ++i) x_[i] = lo + (hi - lo) * static_cast<double>(i) / cells;
    for (std::size_t i = 0; i < cells; ++i)
      cdf_[i + 1] = cdf_[i] + integrator.integrate([&](double t) { return catalog_density(e, t); }, x_[i], x_[i + 1]);
    for (auto& c : cdf_) c /= cdf_.back();
  }

  double operator()(double u) const {
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.begin()) return x_.front();
    if (it == cdf_.end()) return x_.back();
    const std::size_t i = static_cast<std::size_t>(it - cdf_.begin()) - 1;
    const double width = cdf_[i + 1] - cdf_[i];
    const double frac = width > 0 ? (u - cdf_[i]) / width : 0.0;
    return x_[i] + frac * (x_[i + 1] - x_[i]);
  }

 private:
  std::vector<double> x_, cdf_;
};

std::vector<double> sample_catalog(const CatalogEntry& e, std::size_t n, std::mt19937_64& rng) {
  std::vector<double> out(n);
  const auto& p = e.params();
  auto param = [&](std::size_t i) { return p.at(i).to_double(); };
  switch (e.family()) {
    case Family::PointMass:
      std::fill(out.begin(), out.end(), param(0));
      break;
    case Family::BernoulliSym:
      for (auto& v : out) v = uniform(rng) < 0.5 ? -1.0 : 1.0;
      break;
    case Family::Wigner:
      // x-coordinate of a uniform point in the disk of radius 2√a
      for (auto& v : out) {
        const double r = 2.0 * std::sqrt(param(1) * uniform(rng));
        v = param(0) + r * std::cos(2.0 * std::numbers::pi * uniform(rng));
      }
      break;
    case Family::ArcsineSym:
      for (auto& v : out) v = std::sqrt(param(0)) * std::cos(std::numbers::pi * uniform(rng));
      break;
    case Family::ArcsinePos:
      for (auto& v : out) v = param(0) * 0.5 * (1.0 - std::cos(std::numbers::pi * uniform(rng)));
      break;
    case Family::BetaSym: {
      const boost::math::beta_distribution<double> beta(0.5, 1.5);
      for (auto& v : out) {
        const double y = 2.0 * std::sqrt(param(0)) * boost::math::quantile(beta, uniform(rng));
        v = uniform(rng) < 0.5 ? -y : y;
      }
      break;
    }
    case Family::Gaussian: {
      const boost::math::normal_distribution<double> normal(param(0), std::sqrt(param(1)));
      for (auto& v : out) v = boost::math::quantile(normal, uniform(rng));
      break;
    }
    case Family::GammaHalf: {
      const boost::math::gamma_distribution<double> gamma(0.5, param(0));
      for (auto& v : out) v = boost::math::quantile(gamma, uniform(rng));
      break;
    }
    case Family::PoissonClassical: {
      const double c = param(0);
      for (auto& v : out) {
        const double u = uniform(rng);
        double pk = std::exp(-c), cdf = pk;
        unsigned k = 0;
        while (u > cdf && k < 10000) {
          ++k;
          pk *= c / k;
          cdf += pk;
        }
        v = k;
      }
      break;
    }
    case Family::MarchenkoPastur: {
      const double atom = atom_at_zero(e).to_double();
      const TabulatedQuantile quantile(e);
      for (auto& v : out) {
        const double u = uniform(rng);
        v = u < atom ? 0.0 : quantile((u - atom) / (1.0 - atom));
      }
      break;
    }
    case Family::Mlotkowski:
      throw Error(ErrorCode::ModelUnavailable, "no sampler for " + e.to_string());
  }
  if (e.reflected())
    for (auto& v : out) v = -v;
  return out;
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

std::vector<double> hermitian_eigenvalues(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::EvaluationFailure, "eigensolver failed");
  const auto& ev = solver.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + ev.size());
}

// A^{1/2} of a numerically PSD Hermitian matrix; clamps negative eigenvalues.
Eigen::MatrixXcd psd_sqrt(const Eigen::MatrixXcd& a, std::vector<std::string>& warnings) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::EvaluationFailure, "eigensolver failed");
  Eigen::VectorXd ev = solver.eigenvalues();
  const double norm = ev.cwiseAbs().maxCoeff();
  if (ev.minCoeff() < -1e-10 * norm)
    warnings.push_back("clamped eigenvalue " + format_double(ev.minCoeff()) + " of a PSD factor");
  ev = ev.cwiseMax(0.0).cwiseSqrt();
  return solver.eigenvectors() * ev.asDiagonal() * solver.eigenvectors().adjoint();
}

void check_dimension(std::size_t n) {
  if (n < 2) throw Error(ErrorCode::InvalidDimension, "matrix dimension must be >= 2");
}

struct MomentAccumulator {
  explicit MomentAccumulator(std::size_t orders) : per_trial(orders) {}

  void add(const std::vector<double>& spectrum) {
    for (std::size_t k = 0; k < per_trial.size(); ++k) {
      double s = 0.0;
      for (double x : spectrum) s += std::pow(x, static_cast<double>(k + 1));
      per_trial[k].push_back(s / static_cast<double>(spectrum.size()));
    }
  }

  std::vector<std::vector<double>> per_trial;
};

MCReport finish_report(std::string model, std::size_t n, std::size_t trials, std::uint64_t seed,
                       const MomentAccumulator& acc, const MomentSeq& prediction, std::vector<std::string> warnings) {
  MCReport r;
  r.model = std::move(model);
  r.dimension = n;
  r.trials = trials;
  r.seed = seed;
  r.warnings = std::move(warnings);
  for (std::size_t k = 0; k < acc.per_trial.size(); ++k) {
    const auto& xs = acc.per_trial[k];
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var = xs.size() > 1 ? var / static_cast<double>(xs.size() - 1) : 0.0;
    const double se = std::sqrt(var / static_cast<double>(xs.size()));
    const double pred = prediction.at(k + 1).to_double();
    double z;
    if (se > 0.0) {
      z = (mean - pred) / se;
    } else {
      z = std::fabs(mean - pred) <= 1e-9 * std::max(1.0, std::fabs(pred)) ? 0.0
                                                                            : std::copysign(INFINITY, mean - pred);
    }
    r.empirical.push_back(mean);
    r.predicted.push_back(pred);
    r.standard_error.push_back(se);
    r.z_scores.push_back(z);
  }
  return r;
}

void check_orders(std::size_t orders, std::size_t trials) {
  if (orders == 0 || orders > kMaxMcOrders)
    throw Error(ErrorCode::InvalidParams, "orders must be in 1.." + std::to_string(kMaxMcOrders));
  if (trials == 0) throw Error(ErrorCode::InvalidParams, "trials must be >= 1");
}

}  // namespace

Ensemble Ensemble::gue(double shift, double variance) {
  Ensemble e;
  e.kind = Kind::Gue;
  e.shift = shift;
  e.variance = variance;
  return e;
}

Ensemble Ensemble::wishart(double c) {
  Ensemble e;
  e.kind = Kind::Wishart;
  e.variance = c;
  return e;
}

Ensemble Ensemble::diag_from_catalog(const CatalogEntry& entry) {
  Ensemble e;
  e.kind = Kind::DiagFromCatalog;
  e.entry = std::make_shared<const CatalogEntry>(entry);
  return e;
}

Ensemble Ensemble::haar_conjugated(const Ensemble& inner) {
  Ensemble e;
  e.kind = Kind::HaarConjugated;
  e.inner = std::make_shared<const Ensemble>(inner);
  return e;
}

Ensemble Ensemble::negate() const {
  Ensemble e = *this;
  e.negated = !e.negated;
  return e;
}

bool Ensemble::is_positive() const {
  if (negated) return false;
  switch (kind) {
    case Kind::Gue:
      return false;
    case Kind::Wishart:
      return true;
    case Kind::DiagFromCatalog:
      return entry->is_positive() && !entry->reflected();
    case Kind::HaarConjugated:
      return inner->is_positive();
  }
  return false;
}

std::string Ensemble::to_string() const {
  std::string s;
  switch (kind) {
    case Kind::Gue:
      s = "gue(" + format_double(shift) + "," + format_double(variance) + ")";
      break;
    case Kind::Wishart:
      s = "wishart(" + format_double(variance) + ")";
      break;
    case Kind::DiagFromCatalog:
      s = "diag_from_catalog(" + entry->to_string() + ")";
      break;
    case Kind::HaarConjugated:
      s = "haar_conjugated(" + inner->to_string() + ")";
      break;
  }
  return negated ? "negate(" + s + ")" : s;
}

Ensemble model_for(const DistSpec& mu) {
  const auto* e = mu.get_if<CatalogEntry>();
  if (!e) throw Error(ErrorCode::ModelUnavailable, "no matrix model for a non-catalog spec");
  Ensemble model;
  switch (e->family()) {
    case Family::Wigner:
      model = Ensemble::gue(e->param(0).to_double(), e->param(1).to_double());
      break;
    case Family::MarchenkoPastur:
      model = Ensemble::wishart(e->param(0).to_double());
      break;
    case Family::Mlotkowski:
      throw Error(ErrorCode::ModelUnavailable, "no matrix model for " + e->to_string());
    default:
      return Ensemble::diag_from_catalog(*e);
  }
  return e->reflected() ? model.negate() : model;
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  return splitmix64(seed + (trial + 1) * 0x9E3779B97F4A7C15ULL);
}

Eigen::MatrixXcd haar_unitary(std::size_t n, std::mt19937_64& rng) {
  const Eigen::MatrixXcd z = ginibre(n, n, rng);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const auto& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    const cd d = r(j, j);
    const double mag = std::abs(d);
    q.col(j) *= mag > 0 ? d / mag : cd(1.0);
  }
  return q;
}

Eigen::MatrixXcd sample_matrix(const Ensemble& e, std::size_t n, std::mt19937_64& rng) {
  check_dimension(n);
  Eigen::MatrixXcd m;
  const auto dim = static_cast<Eigen::Index>(n);
  switch (e.kind) {
    case Ensemble::Kind::Gue: {
      const Eigen::MatrixXcd g = ginibre(n, n, rng);
      m = (g + g.adjoint()) * (std::sqrt(e.variance) / std::sqrt(2.0 * static_cast<double>(n)));
      m.diagonal().array() += e.shift;
      break;
    }
    case Ensemble::Kind::Wishart: {
      const auto cols = static_cast<std::size_t>(std::llround(e.variance * static_cast<double>(n)));
      if (cols == 0) throw Error(ErrorCode::InvalidDimension, "aspect ratio gives an empty sample");
      const Eigen::MatrixXcd x = ginibre(n, cols, rng);
      m = x * x.adjoint() / static_cast<double>(n);
      break;
    }
    case Ensemble::Kind::DiagFromCatalog: {
      const auto values = sample_catalog(*e.entry, n, rng);
      m = Eigen::MatrixXcd::Zero(dim, dim);
      for (Eigen::Index i = 0; i < dim; ++i) m(i, i) = values[static_cast<std::size_t>(i)];
      break;
    }
    case Ensemble::Kind::HaarConjugated: {
      const Eigen::MatrixXcd inner = sample_matrix(*e.inner, n, rng);
      const Eigen::MatrixXcd u = haar_unitary(n, rng);
      m = u * inner * u.adjoint();
      break;
    }
  }
  return e.negated ? Eigen::MatrixXcd(-m) : m;
}

std::vector<double> sample_spectrum(const Ensemble& e, std::size_t n, std::uint64_t seed) {
  check_dimension(n);
  std::mt19937_64 rng(trial_seed(seed, 0));
  std::vector<double> spectrum;
  if (e.kind == Ensemble::Kind::DiagFromCatalog) {
    spectrum = sample_catalog(*e.entry, n, rng);
    if (e.negated)
      for (auto& v : spectrum) v = -v;
  } else {
    spectrum = hermitian_eigenvalues(sample_matrix(e, n, rng));
  }
  std::sort(spectrum.begin(), spectrum.end());
  return spectrum;
}

double MCReport::max_abs_z() const {
  double m = 0.0;
  for (double z : z_scores) m = std::max(m, std::fabs(z));
  return m;
}

MCReport mc_boxtimes(const DistSpec& lambda, const DistSpec& mu, std::size_t n, std::size_t trials,
                     std::uint64_t seed, std::size_t orders) {
  check_dimension(n);
  check_orders(orders, trials);
  const Ensemble a_model = model_for(lambda);
  if (!a_model.is_positive()) throw Error(ErrorCode::ModelUnavailable, a_model.to_string() + " is not PSD");
  const Ensemble b_model = Ensemble::haar_conjugated(model_for(mu));

  const bool symmetric = is_symmetric_spec(mu, orders);
  const MomentSeq prediction =
      symmetric ? moments_of(boxtimes_sym(lambda, mu, orders / 2 + 1), orders) : moments_of(boxtimes_pos(lambda, mu, orders), orders);

  MomentAccumulator acc(orders);
  std::vector<std::string> warnings;
  for (std::size_t t = 0; t < trials; ++t) {
    std::mt19937_64 rng(trial_seed(seed, t));
    const Eigen::MatrixXcd a = sample_matrix(a_model, n, rng);
    const Eigen::MatrixXcd b = sample_matrix(b_model, n, rng);
    const Eigen::MatrixXcd root = psd_sqrt(a, warnings);
    Eigen::MatrixXcd product = root * b * root;
    product = (product + product.adjoint()) * 0.5;
    acc.add(hermitian_eigenvalues(product));
  }
  return finish_report("boxtimes(" + a_model.to_string() + ", " + b_model.to_string() + ")", n, trials, seed, acc,
                       prediction, std::move(warnings));
}

MCReport mc_boxplus(const DistSpec& mu, const DistSpec& nu, std::size_t n, std::size_t trials, std::uint64_t seed,
                    std::size_t orders) {
  check_dimension(n);
  check_orders(orders, trials);
  const Ensemble a_model = model_for(mu);
  const Ensemble b_model = Ensemble::haar_conjugated(model_for(nu));
  const MomentSeq prediction = moments_of(boxplus(mu, nu, orders), orders);

  MomentAccumulator acc(orders);
  for (std::size_t t = 0; t < trials; ++t) {
    std::mt19937_64 rng(trial_seed(seed, t));
    const Eigen::MatrixXcd a = sample_matrix(a_model, n, rng);
    const Eigen::MatrixXcd b = sample_matrix(b_model, n, rng);
    acc.add(hermitian_eigenvalues(a + b));
  }
  return finish_report("boxplus(" + a_model.to_string() + ", " + b_model.to_string() + ")", n, trials, seed, acc,
                       prediction, {});
}

}  // namespace freeconv
