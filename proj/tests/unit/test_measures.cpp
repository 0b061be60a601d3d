#include "freeconv/error.hpp"
#include "freeconv/measures.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <boost/math/distributions/gamma.hpp>

#include <cmath>
#include <random>

using namespace freeconv;

namespace {

void expect_exact(std::span<const Scalar> actual, std::span<const Scalar> expected) {
  ASSERT_EQ(actual.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i)
    EXPECT_TRUE(exact_equal(actual[i], expected[i])) << "index " << i + 1 << ": " << actual[i].to_string();
}

void expect_exact(std::span<const Scalar> actual, const std::vector<Scalar>& expected) {
  expect_exact(actual, std::span<const Scalar>(expected));
}

std::vector<Scalar> ints(std::initializer_list<long> v) {
  std::vector<Scalar> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

FiniteMeasure random_positive_measure(std::mt19937_64& rng) {
  std::vector<Atom> atoms;
  const int count = std::uniform_int_distribution<int>(1, 4)(rng);
  for (int i = 0; i < count; ++i) {
    // distinct integer parts keep the roots distinct and rational
    const Scalar root = Scalar(i + 1) + Scalar::ratio(std::uniform_int_distribution<long>(0, 4)(rng), 5);
    atoms.push_back({root * root, Scalar::ratio(std::uniform_int_distribution<long>(1, 9)(rng), 4)});
  }
  return FiniteMeasure(atoms);
}

}  // namespace

TEST(FiniteMeasure, Validation) {
  EXPECT_THROW(FiniteMeasure({{Scalar(1), Scalar(0)}}), Error);
  EXPECT_THROW(FiniteMeasure({{Scalar(1), Scalar(1)}, {Scalar(1), Scalar(2)}}), Error);
  const FiniteMeasure m({{Scalar(2), Scalar::ratio(1, 2)}, {Scalar(-1), Scalar(3)}});
  EXPECT_TRUE(exact_equal(m.total_mass(), Scalar::ratio(7, 2)));
  EXPECT_TRUE(exact_equal(m.moment(2), Scalar(5)));
}

TEST(MomentsOf, SymmetricCarrierOfCatalan) {
  const auto mu = DistSpec::symmetric(DistSpec(CatalogEntry::marchenko_pastur(1)));
  expect_exact(moments_of(mu, 8).values(), ints({0, 1, 0, 2, 0, 5, 0, 14}));
}

TEST(MomentsOf, FreePoissonTriplet) {
  const Scalar c = Scalar::ratio(5, 2);
  LevyTriplet t;
  t.nu = FiniteMeasure({{Scalar(1), c}});
  t.b = c;
  const auto m = moments_of(DistSpec::triplet(t), 10);
  expect_exact(m.values(), catalog_moments(CatalogEntry::marchenko_pastur(c), 10).values());
}

TEST(MomentsOf, PassThroughAndLimit) {
  const auto d = DistSpec::moments(ints({1, 1, 1}));
  expect_exact(moments_of(d, 3).values(), ints({1, 1, 1}));
  EXPECT_THROW(moments_of(d, 4), Error);
}

TEST(MomentsOf, TripletCumulantsRecovered) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    LevyTriplet t;
    t.a = Scalar::ratio(std::uniform_int_distribution<long>(0, 5)(rng), 3);
    t.b = Scalar::ratio(std::uniform_int_distribution<long>(-5, 5)(rng), 2);
    std::vector<Atom> atoms;
    for (long x : {-3L, 1L, 2L})
      atoms.push_back({Scalar::ratio(x, std::uniform_int_distribution<long>(1, 3)(rng) + (x == 1 ? 3 : 0)),
                       Scalar::ratio(std::uniform_int_distribution<long>(1, 5)(rng), 2)});
    t.nu = FiniteMeasure(atoms);
    const auto kappa = free_cumulants_from_moments(moments_of(DistSpec::triplet(t), 8));
    const auto& fm = std::get<FiniteMeasure>(t.nu);
    Scalar k1 = t.b;
    for (const auto& a : fm.atoms())
      if (less(Scalar(1), abs(a.location))) k1 += a.weight * a.location;
    EXPECT_TRUE(exact_equal(kappa.at(1), k1));
    EXPECT_TRUE(exact_equal(kappa.at(2), t.a + fm.moment(2)));
    for (unsigned n = 3; n <= 8; ++n) EXPECT_TRUE(exact_equal(kappa.at(n), fm.moment(n)));
  }
}

TEST(MomentsOf, ClassicalTripletIsCompoundPoisson) {
  LevyTriplet t;
  t.nu = FiniteMeasure({{Scalar(1), Scalar(2)}});
  t.b = Scalar(2);
  const auto m = moments_of(DistSpec::triplet(t, LevyFlavor::Classical), 6);
  expect_exact(m.values(), catalog_moments(CatalogEntry::poisson_classical(2), 6).values());
}

TEST(MomentsOf, CatalogLevyMeasure) {
  // ν = 2 × arcsine_pos(4): κ_1 picks up the part of ν beyond 1
  LevyTriplet t;
  t.nu = ScaledCatalogMeasure{Scalar(2), CatalogEntry::arcsine_pos(4)};
  const auto kappa = triplet_cumulants(t, 4);
  const auto law = CatalogEntry::arcsine_pos(4);
  const double tail = oracle::quad_moment([&](double x) { return catalog_density(law, x); }, 1.0, 4.0, 1);
  EXPECT_NEAR(kappa.at(1).to_double(), 2 * tail, 1e-10);
  EXPECT_TRUE(exact_equal(kappa.at(3), Scalar(2) * catalog_moments(law, 3).at(3)));
}

TEST(PushPower, Examples) {
  const auto w = DistSpec(CatalogEntry::wigner(0, 1));
  expect_exact(moments_of(push_power(w, 2, 6), 6).values(),
               catalog_moments(CatalogEntry::marchenko_pastur(1), 6).values());
  const auto a = DistSpec(CatalogEntry::arcsine_sym(1));
  expect_exact(moments_of(push_power(a, 2, 6), 6).values(), catalog_moments(CatalogEntry::arcsine_pos(1), 6).values());
  const Scalar b = Scalar::ratio(-3, 2);
  expect_exact(moments_of(push_power(DistSpec(CatalogEntry::point_mass(b)), 2, 5), 5).values(),
               catalog_moments(CatalogEntry::point_mass(b * b), 5).values());
  EXPECT_THROW(push_power(DistSpec::moments(ints({0, 1, 0})), 2, 2), Error);
  EXPECT_THROW(push_power(w, 3, 2), Error);
}

TEST(PushPower, ComposesWithEvenMoments) {
  for (const auto& e : {CatalogEntry::gaussian(1, 2), CatalogEntry::beta_sym(3), CatalogEntry::mlotkowski(3, 2)}) {
    const DistSpec d(e);
    const auto m = moments_of(d, 16);
    const auto sq = moments_of(push_power(d, 2, 8), 8);
    for (std::size_t n = 1; n <= 8; ++n) EXPECT_TRUE(exact_equal(sq.at(n), m.at(2 * n)));
  }
}

TEST(CarrierOf, RejectsAsymmetric) {
  try {
    carrier_of(DistSpec(CatalogEntry::marchenko_pastur(1)), 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::AsymmetricInput);
  }
}

TEST(PushSqrtSplit, Examples) {
  auto [plus, minus] = push_sqrt_split(FiniteMeasure({{Scalar(4), Scalar(1)}}));
  EXPECT_TRUE(measure_equal(plus, FiniteMeasure({{Scalar(2), Scalar(1)}})));
  EXPECT_TRUE(measure_equal(minus, FiniteMeasure({{Scalar(-2), Scalar(1)}})));
  auto [p2, m2] = push_sqrt_split(FiniteMeasure({{Scalar(1), Scalar(2)}, {Scalar(9), Scalar(3)}}));
  EXPECT_TRUE(measure_equal(p2, FiniteMeasure({{Scalar(1), Scalar(2)}, {Scalar(3), Scalar(3)}})));
  EXPECT_TRUE(measure_equal(m2, FiniteMeasure({{Scalar(-1), Scalar(2)}, {Scalar(-3), Scalar(3)}})));
  try {
    push_sqrt_split(FiniteMeasure({{Scalar(-1), Scalar(1)}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NegativeSupport);
  }
}

TEST(SymmetrizeLevy, UnitAtom) {
  const auto s = symmetrize_levy(FiniteMeasure({{Scalar(1), Scalar(1)}}));
  EXPECT_TRUE(measure_equal(s, FiniteMeasure({{Scalar(1), Scalar::ratio(1, 2)}, {Scalar(-1), Scalar::ratio(1, 2)}})));
}

TEST(SymmetrizeLevy, RoundTripSymmetryAndMass) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const auto nu = random_positive_measure(rng);
    const auto s = symmetrize_levy(nu);
    EXPECT_TRUE(s.is_symmetric());
    EXPECT_TRUE(exact_equal(s.total_mass(), nu.total_mass()));
    EXPECT_TRUE(measure_equal(desymmetrize_levy(s), nu));
    // ∫ x^{2n} dν_sym = ∫ x^n dν
    for (unsigned n = 1; n <= 5; ++n) EXPECT_TRUE(exact_equal(s.moment(2 * n), nu.moment(n)));
  }
}

TEST(DensitySqrtPush, Substitution) {
  const auto box = density_sqrt_push([](double x) { return x > 0 && x < 1 ? 1.0 : 0.0; });
  EXPECT_DOUBLE_EQ(box(0.5), 1.0);
  EXPECT_DOUBLE_EQ(box(1.5), 0.0);
  EXPECT_DOUBLE_EQ(box(-0.5), 0.0);
  const auto expo = density_sqrt_push([](double x) { return std::exp(-x); });
  EXPECT_DOUBLE_EQ(expo(1.3), 2 * 1.3 * std::exp(-1.69));
}

TEST(DensitySqrtPush, PreservesMass) {
  for (double s : {0.5, 1.0, 3.0}) {
    const boost::math::gamma_distribution<double> g(0.5, s);
    const auto h = [&](double x) { return x > 0 ? boost::math::pdf(g, x) : 0.0; };
    const auto pushed = density_sqrt_push(h);
    EXPECT_NEAR(oracle::quad_moment(pushed, 0.0, INFINITY, 0), oracle::quad_moment(h, 0.0, INFINITY, 0), 1e-8);
  }
}

TEST(Reflect, FlipsOddMoments) {
  const auto d = DistSpec::moments(ints({1, 2, 3, 4}));
  expect_exact(moments_of(reflect(d), 4).values(), ints({-1, 2, -3, 4}));
  const auto mp = DistSpec(CatalogEntry::marchenko_pastur(2));
  const auto r = moments_of(reflect(mp), 5), m = moments_of(mp, 5);
  for (unsigned n = 1; n <= 5; ++n) EXPECT_TRUE(exact_equal(r.at(n), n % 2 ? -m.at(n) : m.at(n)));
}
