#pragma once

// Random matrix models realizing ⊞ (A + U B U*) and ⊠ (A^{1/2} U B U* A^{1/2})
// and Monte Carlo comparison with series predictions.

#include "freeconv/measures.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace freeconv {

struct Ensemble {
  enum class Kind { Gue, Wishart, DiagFromCatalog, HaarConjugated };

  Kind kind = Kind::Gue;
  /// Gue: shift b and variance a; Wishart: aspect ratio c in `variance`.
  double shift = 0.0;
  double variance = 1.0;
  std::shared_ptr<const CatalogEntry> entry;
  std::shared_ptr<const Ensemble> inner;
  bool negated = false;

  static Ensemble gue(double shift = 0.0, double variance = 1.0);
  static Ensemble wishart(double c);
  static Ensemble diag_from_catalog(const CatalogEntry& e);
  static Ensemble haar_conjugated(const Ensemble& inner);
  Ensemble negate() const;

  /// Eigenvalues are >= 0.
  bool is_positive() const;
  std::string to_string() const;
};

/// Matrix model of a catalog law: wigner → gue, marchenko_pastur → wishart,
/// other catalog entries → diagonal of inverse-CDF samples. Throws ModelUnavailable.
Ensemble model_for(const DistSpec& mu);

/// Seed for trial t: splitmix64 of seed + (t + 1) * golden ratio constant.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

Eigen::MatrixXcd sample_matrix(const Ensemble& e, std::size_t n, std::mt19937_64& rng);

/// Haar unitary from the QR factorization of a complex Ginibre matrix.
Eigen::MatrixXcd haar_unitary(std::size_t n, std::mt19937_64& rng);

/// Sorted eigenvalues of one sample. Throws InvalidDimension when n < 2.
std::vector<double> sample_spectrum(const Ensemble& e, std::size_t n, std::uint64_t seed);

struct MCReport {
  std::string model;
  std::size_t dimension = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<double> empirical;
  std::vector<double> predicted;
  std::vector<double> standard_error;
  std::vector<double> z_scores;
  std::vector<std::string> warnings;

  double max_abs_z() const;
};

inline constexpr std::size_t kDefaultDimension = 512;
inline constexpr std::size_t kDefaultTrials = 10;
inline constexpr std::size_t kDefaultMcOrders = 6;
inline constexpr std::size_t kMaxMcOrders = 8;

/// Spectrum of A^{1/2} U B U* A^{1/2}, A from λ (positive model), B from μ.
MCReport mc_boxtimes(const DistSpec& lambda, const DistSpec& mu, std::size_t n, std::size_t trials,
                     std::uint64_t seed, std::size_t orders);

/// Spectrum of A + U B U*.
MCReport mc_boxplus(const DistSpec& mu, const DistSpec& nu, std::size_t n, std::size_t trials, std::uint64_t seed,
                    std::size_t orders);

}  // namespace freeconv
