#include "freeconv/catalog.hpp"
#include "freeconv/classify.hpp"
#include "freeconv/convolution.hpp"
#include "freeconv/error.hpp"
#include "freeconv/transforms.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace freeconv;

namespace {

std::vector<Scalar> ints(std::initializer_list<long> v) {
  std::vector<Scalar> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

void expect_exact(std::span<const Scalar> actual, std::span<const Scalar> expected) {
  ASSERT_EQ(actual.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i)
    EXPECT_TRUE(exact_equal(actual[i], expected[i])) << "index " << i + 1 << ": " << actual[i].to_string();
}

void expect_exact(std::span<const Scalar> actual, const std::vector<Scalar>& expected) {
  expect_exact(actual, std::span<const Scalar>(expected));
}

void expect_same(const DistSpec& a, const DistSpec& b, std::size_t order) {
  expect_exact(moments_of(a, order).values(), moments_of(b, order).values());
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidParams;
}

oracle::Rationals to_rationals(const MomentSeq& m) {
  oracle::Rationals out;
  for (const auto& v : m.values()) out.push_back(v.rational());
  return out;
}

std::vector<Scalar> from_rationals(const oracle::Rationals& r) { return {r.begin(), r.end()}; }

FiniteMeasure random_measure(std::mt19937_64& rng, bool positive) {
  std::vector<Atom> atoms;
  const int k = 1 + static_cast<int>(rng() % 3);
  std::vector<Scalar> weights;
  Scalar left(1);
  for (int i = 0; i < k; ++i) {
    const Scalar w = i + 1 == k ? left : left * Scalar::ratio(1 + static_cast<long>(rng() % 3), 4);
    left -= w;
    Scalar x = Scalar(i + 1) + Scalar::ratio(static_cast<long>(rng() % 5), 5);
    if (!positive && rng() % 2) x = -x;
    atoms.push_back({x, w});
  }
  return FiniteMeasure(atoms);
}

DistSpec moments_spec(const FiniteMeasure& p, std::size_t order) {
  std::vector<Scalar> m;
  for (unsigned n = 1; n <= order; ++n) m.push_back(p.moment(n));
  return DistSpec::moments(m);
}

DistSpec symmetric_spec(const FiniteMeasure& p, std::size_t order) {
  std::vector<Atom> atoms;
  for (const auto& a : p.atoms()) {
    atoms.push_back({abs(a.location), a.weight / 2});
    atoms.push_back({-abs(a.location), a.weight / 2});
  }
  return moments_spec(FiniteMeasure(atoms), order);
}

const Scalar kHalf = Scalar::ratio(1, 2);
const Scalar kThreeHalves = Scalar::ratio(3, 2);

}  // namespace

TEST(Boxplus, FreePoissonMinusItsReflection) {
  const Scalar c = Scalar::ratio(1, 3);
  const DistSpec mp = CatalogEntry::marchenko_pastur(c);
  const auto mu = boxplus(mp, reflect(mp), 12);
  std::vector<Scalar> expected;
  for (int n = 1; n <= 12; ++n) expected.push_back(n % 2 ? Scalar(0) : 2 * c);
  expect_exact(free_cumulant_series(mu, 12).values(), expected);
}

TEST(Boxplus, BernoulliSquaredIsArcsine) {
  const DistSpec d = CatalogEntry::bernoulli_sym();
  expect_same(boxplus(d, d, 12), CatalogEntry::arcsine_sym(4), 12);
  // independent route through the partition oracle
  const auto kappa = oracle::free_cumulants_from_moments(to_rationals(catalog_moments(CatalogEntry::bernoulli_sym(), 10)));
  oracle::Rationals doubled;
  for (const auto& k : kappa) doubled.push_back(2 * k);
  expect_exact(catalog_moments(CatalogEntry::arcsine_sym(4), 10).values(),
               from_rationals(oracle::moments_from_free_cumulants(doubled)));
}

TEST(Boxplus, PointMassZeroIsNeutral) {
  const DistSpec mu = CatalogEntry::gamma_half(Scalar::ratio(2, 3));
  expect_same(boxplus(mu, CatalogEntry::point_mass(0), 10), mu, 10);
}

TEST(Boxplus, ReflectionNegatesOddCumulants) {
  const DistSpec mu = CatalogEntry::arcsine_pos(3);
  const auto k = free_cumulant_series(mu, 10), kr = free_cumulant_series(reflect(mu), 10);
  for (std::size_t n = 1; n <= 10; ++n) EXPECT_TRUE(exact_equal(kr.at(n), n % 2 ? -k.at(n) : k.at(n)));
}

TEST(BoxplusPower, FreePoissonFromCatalan) {
  const Scalar c = Scalar::ratio(3, 7);
  expect_same(boxplus_power(CatalogEntry::marchenko_pastur(1), c, 10), CatalogEntry::marchenko_pastur(c), 10);
  const DistSpec mu = CatalogEntry::arcsine_pos(2);
  expect_same(boxplus_power(mu, 1, 10), mu, 10);
}

TEST(BoxplusPower, CompoundPoissonRoot) {
  const Scalar c = 3;
  const DistSpec sigma = CatalogEntry::arcsine_pos(1);
  expect_same(boxplus_power(compound_poisson(c, sigma, 10), Scalar(1) / c, 10),
              boxtimes_pos(CatalogEntry::marchenko_pastur(1), sigma, 10), 10);
}

TEST(BoxplusPower, Errors) {
  const DistSpec mu = CatalogEntry::mlotkowski(kThreeHalves, 1);
  EXPECT_EQ(code_of([&] { boxplus_power(mu, kHalf, 8); }), ErrorCode::InvalidExponent);
  EXPECT_EQ(code_of([&] { boxplus_power(mu, 0, 8); }), ErrorCode::InvalidExponent);
  EXPECT_NO_THROW(boxplus_power(mu, 2, 8));
}

TEST(BoxtimesPos, MlotkowskiSquareIsFreePoisson) {
  const DistSpec half = CatalogEntry::mlotkowski(kThreeHalves, 1);
  expect_same(boxtimes_pos(half, half, 12), CatalogEntry::marchenko_pastur(1), 12);
}

TEST(BoxtimesPos, NeutralAndFirstMoment) {
  const DistSpec mu = CatalogEntry::gamma_half(Scalar::ratio(5, 2));
  expect_same(boxtimes_pos(mu, CatalogEntry::point_mass(1), 10), mu, 10);
  const auto prod = moments_of(boxtimes_pos(CatalogEntry::arcsine_pos(3), CatalogEntry::marchenko_pastur(2), 6), 6);
  EXPECT_TRUE(exact_equal(prod.at(1), Scalar::ratio(3, 2) * 2));
}

TEST(BoxtimesPos, Errors) {
  EXPECT_EQ(code_of([] { boxtimes_pos(CatalogEntry::wigner(0, 1), CatalogEntry::point_mass(1), 4); }),
            ErrorCode::ZeroFirstMoment);
}

TEST(BoxtimesPos, AgreesWithKrewerasOracle) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t n = 7;
    const auto a = moments_spec(random_measure(rng, true), n);
    const auto b = moments_spec(random_measure(rng, true), n);
    const auto expected = oracle::boxtimes_moments(to_rationals(moments_of(a, n)), to_rationals(moments_of(b, n)));
    expect_exact(moments_of(boxtimes_pos(a, b, n), n).values(), from_rationals(expected));
  }
}

TEST(BoxtimesSym, WignerFromArcsine) {
  // λ with S = 1/√(z+2), times the arcsine law, gives the semicircle
  const DistSpec lambda(moments_from_s(series_inverse(series_sqrt(TruncatedSeries::linear(2, 1, 12))), 13));
  const auto w = boxtimes_sym(lambda, CatalogEntry::arcsine_sym(1), 12);
  EXPECT_TRUE(same_law(w, CatalogEntry::wigner(0, 1), 24, 1e-12));
}

TEST(BoxtimesSym, BetaFromArcsineAndFreePoisson) {
  const auto b = boxtimes_sym(CatalogEntry::marchenko_pastur(1), CatalogEntry::arcsine_sym(1), 12);
  expect_same(b, CatalogEntry::beta_sym(1), 24);
  const Scalar s = Scalar::ratio(7, 3);
  expect_same(boxtimes_sym(CatalogEntry::marchenko_pastur(1), CatalogEntry::arcsine_sym(s), 10), CatalogEntry::beta_sym(s),
              20);
}

TEST(BoxtimesSym, PointMassIsNeutral) {
  const DistSpec mu = CatalogEntry::arcsine_sym(Scalar::ratio(4, 9));
  expect_same(boxtimes_sym(CatalogEntry::point_mass(1), mu, 8), mu, 17);
}

TEST(BoxtimesSym, AgreesWithKrewerasOracle) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 8;
    const auto lambda = moments_spec(random_measure(rng, true), n);
    const auto mu = symmetric_spec(random_measure(rng, false), n);
    const auto expected = oracle::boxtimes_moments(to_rationals(moments_of(lambda, n)), to_rationals(moments_of(mu, n)));
    expect_exact(moments_of(boxtimes_sym(lambda, mu, n / 2), n).values(), from_rationals(expected));
  }
}

TEST(BoxtimesSym, SquaredPushIdentity) {
  // (λ ⊠ μ)^(2) = λ ⊠ μ^(2) ⊠ λ, cross-checked against the Kreweras oracle
  std::mt19937_64 rng(2026);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 6;
    const auto lambda = moments_spec(random_measure(rng, true), 2 * n);
    const auto mu = symmetric_spec(random_measure(rng, false), 2 * n);
    const auto lhs = push_power(boxtimes_sym(lambda, mu, n), 2, n);
    const auto rhs = boxtimes_pos(lambda, boxtimes_pos(push_power(mu, 2, n), lambda, n), n);
    expect_exact(moments_of(lhs, n).values(), moments_of(rhs, n).values());
    const auto full = oracle::boxtimes_moments(to_rationals(moments_of(lambda, 2 * n)), to_rationals(moments_of(mu, 2 * n)));
    for (std::size_t k = 1; k <= n; ++k) EXPECT_TRUE(exact_equal(moments_of(lhs, n).at(k), Scalar(full[2 * k - 1])));
  }
}

TEST(BoxtimesSym, WignerProductSquareIsFreeInfinitelyDivisible) {
  const DistSpec w = CatalogEntry::wigner(0, 1);
  std::vector<DistSpec> sigmas{CatalogEntry::marchenko_pastur(kHalf), CatalogEntry::arcsine_pos(2),
                               CatalogEntry::mlotkowski(Scalar::ratio(5, 4), 1), CatalogEntry::point_mass(3),
                               CatalogEntry::gamma_half(1)};
  std::mt19937_64 rng(17);
  for (int i = 0; i < 10; ++i) sigmas.push_back(moments_spec(random_measure(rng, true), 12));
  for (const auto& sigma : sigmas) {
    const auto square = push_power(boxtimes_sym(sigma, w, 12), 2, 12);
    expect_same(square, boxtimes_pos(boxtimes_pos(sigma, sigma, 12), CatalogEntry::marchenko_pastur(1), 12), 12);
    EXPECT_FALSE(free_id_test(square, 12).rejected());
  }
}

TEST(BoxtimesSym, BetaAsWignerProduct) {
  // b_1 = w ⊠ a⁺ ⊠ m̄₂
  const DistSpec m_bar(moments_from_s(series_inverse(series_sqrt(TruncatedSeries::linear(2, 1, 12))), 13));
  const auto lambda = boxtimes_pos(CatalogEntry::arcsine_pos(1), m_bar, 13);
  const auto b = boxtimes_sym(lambda, CatalogEntry::wigner(0, 1), 12);
  EXPECT_TRUE(same_law(b, CatalogEntry::beta_sym(1), 24, 1e-12));
}

TEST(CompoundPoisson, Examples) {
  expect_same(compound_poisson(1, CatalogEntry::point_mass(1), 10), CatalogEntry::marchenko_pastur(1), 10);
  const DistSpec sigma = CatalogEntry::gamma_half(Scalar::ratio(1, 2));
  expect_same(compound_poisson(1, sigma, 10), boxtimes_pos(CatalogEntry::marchenko_pastur(1), sigma, 10), 10);
  const Scalar c = Scalar::ratio(2, 3), b = Scalar::ratio(-5, 4);
  const auto k = free_cumulant_series(compound_poisson(c, CatalogEntry::point_mass(b), 8), 8);
  for (unsigned n = 1; n <= 8; ++n) EXPECT_TRUE(exact_equal(k.at(n), c * pow(b, n)));
  EXPECT_EQ(code_of([] { compound_poisson(0, CatalogEntry::point_mass(1), 4); }), ErrorCode::InvalidParams);
}

TEST(BercoviciPata, Examples) {
  expect_same(bp_lambda(CatalogEntry::gaussian(0, 1), 10), CatalogEntry::wigner(0, 1), 10);
  expect_same(bp_lambda(CatalogEntry::gaussian(2, Scalar::ratio(1, 3)), 10),
              CatalogEntry::wigner(2, Scalar::ratio(1, 3)), 10);
  for (const auto& c : {kHalf, Scalar(1), Scalar(3)})
    expect_same(bp_lambda(CatalogEntry::poisson_classical(c), 10), CatalogEntry::marchenko_pastur(c), 10);
  const DistSpec b = CatalogEntry::point_mass(Scalar::ratio(-7, 2));
  expect_same(bp_lambda(b, 8), b, 8);
}

TEST(BercoviciPata, Morphism) {
  const std::size_t n = 10;
  const DistSpec mu = CatalogEntry::gamma_half(2), nu = CatalogEntry::poisson_classical(Scalar::ratio(1, 5));
  const auto cm = classical_cumulants_from_moments(moments_of(mu, n));
  const auto cn = classical_cumulants_from_moments(moments_of(nu, n));
  std::vector<Scalar> sum;
  for (std::size_t k = 1; k <= n; ++k) sum.push_back(cm.at(k) + cn.at(k));
  const DistSpec convolved(moments_from_classical_cumulants(CumulantSeq(sum)));
  expect_same(bp_lambda(convolved, n), boxplus(bp_lambda(mu, n), bp_lambda(nu, n), n), n);
}

TEST(Main1, PointMassGivesSemicircle) {
  expect_same(main1_pos_to_sym(CatalogEntry::point_mass(1), 8), CatalogEntry::wigner(0, 1), 17);
}

TEST(Main1, FreePoissonCarrier) {
  const DistSpec m = CatalogEntry::marchenko_pastur(1);
  const auto mu = main1_pos_to_sym(m, 10);
  const auto k = free_cumulant_series(mu, 20);
  for (std::size_t n = 1; n <= 20; ++n) EXPECT_TRUE(exact_equal(k.at(n), Scalar(n % 2 ? 0 : 1)));
  expect_same(push_power(mu, 2, 10), boxtimes_pos(m, m, 10), 10);
}

TEST(Main1, RoundTrip) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const auto sigma = compound_poisson(Scalar::ratio(1 + static_cast<long>(rng() % 5), 2),
                                        moments_spec(random_measure(rng, true), 12), 12);
    expect_same(main1_sym_to_pos(main1_pos_to_sym(sigma, 12), 12), sigma, 12);
  }
}

TEST(Main1, Errors) {
  EXPECT_EQ(code_of([] { main1_pos_to_sym(CatalogEntry::mlotkowski(kThreeHalves, 1), 8); }), ErrorCode::NotFreeRegular);
  EXPECT_EQ(code_of([] { main1_sym_to_pos(CatalogEntry::arcsine_pos(1), 8); }), ErrorCode::AsymmetricInput);
}

TEST(Main1, TripletMaps) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    LevyTriplet sigma;
    // squares of rationals keep the square-root split exact
    std::vector<Atom> atoms;
    for (int k = 0; k < 3; ++k) {
      const Scalar r = Scalar(k) + Scalar::ratio(1 + static_cast<long>(rng() % 4), 5);
      atoms.push_back({r * r, Scalar::ratio(1 + static_cast<long>(rng() % 5), 3)});
    }
    sigma.nu = FiniteMeasure(atoms);
    sigma.b = Scalar::ratio(static_cast<long>(rng() % 5), 3) + atoms[0].weight * atoms[0].location;
    const auto mu = main1_triplet_pos_to_sym(sigma);
    EXPECT_TRUE(mu.b.is_zero());
    EXPECT_TRUE(std::get<FiniteMeasure>(mu.nu).is_symmetric());
    const auto ks = triplet_cumulants(sigma, 6), km = triplet_cumulants(mu, 12);
    for (std::size_t n = 1; n <= 6; ++n) {
      EXPECT_TRUE(exact_equal(km.at(2 * n), ks.at(n)));
      EXPECT_TRUE(km.at(2 * n - 1).is_zero());
    }
    const auto back = main1_triplet_sym_to_pos(mu);
    EXPECT_TRUE(exact_equal(back.b, sigma.b));
    EXPECT_TRUE(back.a.is_zero());
    EXPECT_TRUE(measure_equal(std::get<FiniteMeasure>(back.nu), std::get<FiniteMeasure>(sigma.nu)));
  }
}

TEST(Main1, TripletErrors) {
  LevyTriplet mu;
  mu.b = 1;
  EXPECT_EQ(code_of([&] { main1_triplet_sym_to_pos(mu); }), ErrorCode::AsymmetricInput);
  LevyTriplet sigma;
  sigma.nu = FiniteMeasure({{Scalar::ratio(1, 2), Scalar(1)}});
  EXPECT_EQ(code_of([&] { main1_triplet_pos_to_sym(sigma); }), ErrorCode::NotFreeRegular);
}

TEST(TypeG, UnitMixing) {
  const auto [sigma, mu] = type_g_from_mixing(FiniteMeasure({{Scalar(1), Scalar(1)}}), 10);
  const auto k = free_cumulant_series(sigma, 10);
  Scalar double_factorial(1);
  for (unsigned n = 1; n <= 10; ++n) {
    double_factorial *= Scalar(2 * n - 1);
    EXPECT_TRUE(exact_equal(k.at(n), double_factorial / pow(Scalar(2), n)));
  }
  const DistSpec gamma = CatalogEntry::gamma_half(1);
  expect_same(sigma, compound_poisson(1, gamma, 10), 10);
  expect_same(sigma, boxtimes_pos(CatalogEntry::marchenko_pastur(1), gamma, 10), 10);
  expect_same(main1_sym_to_pos(mu, 10), sigma, 10);
}

TEST(TypeG, LinearInMixing) {
  const auto one = free_cumulant_series(type_g_from_mixing(FiniteMeasure({{Scalar(1), Scalar(1)}}), 8).first, 8);
  const auto two = free_cumulant_series(type_g_from_mixing(FiniteMeasure({{Scalar(1), Scalar(2)}}), 8).first, 8);
  for (std::size_t n = 1; n <= 8; ++n) EXPECT_TRUE(exact_equal(two.at(n), 2 * one.at(n)));
  const Scalar s = Scalar::ratio(2, 5);
  const auto scaled = free_cumulant_series(type_g_from_mixing(FiniteMeasure({{s, Scalar(1)}}), 4).first, 4);
  EXPECT_TRUE(exact_equal(scaled.at(2), Scalar::ratio(3, 4) * s * s));
  EXPECT_EQ(code_of([] { type_g_from_mixing(FiniteMeasure({{Scalar(-1), Scalar(1)}}), 4); }), ErrorCode::NegativeScale);
}

TEST(AlgebraLaws, Boxplus) {
  const std::size_t n = 12;
  const DistSpec a = CatalogEntry::arcsine_pos(2), b = CatalogEntry::gaussian(-1, 2),
                 c = CatalogEntry::mlotkowski(Scalar::ratio(7, 4), kHalf);
  expect_same(boxplus(a, b, n), boxplus(b, a, n), n);
  expect_same(boxplus(boxplus(a, b, n), c, n), boxplus(a, boxplus(b, c, n), n), n);
  expect_same(boxplus(a, CatalogEntry::point_mass(0), n), a, n);
}

TEST(AlgebraLaws, BoxtimesPos) {
  const std::size_t n = 12;
  const DistSpec a = CatalogEntry::arcsine_pos(2), b = CatalogEntry::marchenko_pastur(Scalar::ratio(2, 3)),
                 c = CatalogEntry::mlotkowski(Scalar::ratio(7, 4), kHalf);
  expect_same(boxtimes_pos(a, b, n), boxtimes_pos(b, a, n), n);
  expect_same(boxtimes_pos(boxtimes_pos(a, b, n), c, n), boxtimes_pos(a, boxtimes_pos(b, c, n), n), n);
  expect_same(boxtimes_pos(a, CatalogEntry::point_mass(1), n), a, n);
}

TEST(AlgebraLaws, BoxtimesSym) {
  const std::size_t n = 12;
  const DistSpec a = CatalogEntry::arcsine_pos(2), b = CatalogEntry::marchenko_pastur(Scalar::ratio(2, 3));
  const DistSpec w = CatalogEntry::wigner(0, 3);
  expect_same(boxtimes_sym(a, boxtimes_sym(b, w, n), n), boxtimes_sym(boxtimes_pos(a, b, n), w, n), 2 * n);
  expect_same(boxtimes_sym(boxtimes_pos(a, b, n), w, n), boxtimes_sym(boxtimes_pos(b, a, n), w, n), 2 * n);
  // m_2(λ ⊠ μ) = m_1(λ)² m_2(μ)
  const auto first = moments_of(boxtimes_sym(CatalogEntry::arcsine_pos(3), CatalogEntry::bernoulli_sym(), n), 2);
  EXPECT_TRUE(exact_equal(first.at(2), Scalar::ratio(9, 4)));
}

TEST(Recognize, FindsCatalogLaw) {
  const auto found = recognize(boxtimes_pos(CatalogEntry::mlotkowski(kThreeHalves, 1),
                                            CatalogEntry::mlotkowski(kThreeHalves, 1), 12),
                               {CatalogEntry::arcsine_pos(1), CatalogEntry::marchenko_pastur(1)}, 12);
  ASSERT_TRUE(found.has_value());
  EXPECT_EQ(found->to_string(), "marchenko_pastur(1)");
  EXPECT_FALSE(recognize(CatalogEntry::gamma_half(1), {CatalogEntry::marchenko_pastur(1)}, 6).has_value());
}
