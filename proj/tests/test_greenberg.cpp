#include <gtest/gtest.h>

#include <random>
#include <set>

#include "wittlab/catalog.hpp"
#include "wittlab/greenberg.hpp"

using namespace wittlab;

namespace {

FiniteField f2() { return FiniteField(FiniteFieldSpec::prime(2)); }
FiniteField f4() { return FiniteField(named_spec("W(F4)")->residue_field()); }

QuotientAlgebra truncated(int d, int k) {
  nlohmann::json j = {{"p", 2}, {"vars", {"x"}}, {"ideal", {"x^" + std::to_string(k)}}};
  if (d == 2) j["modulus"] = {1, 1, 1};
  return QuotientAlgebra::parse(j);
}

}  // namespace

TEST(Greenberg, RelationFromEisenstein) {
  GreenbergAlgebra<FiniteField> R(named_spec("Z2[pi]"), f2(), 2);
  const auto t = R.generator();
  const auto tt = R.mul(t, t);
  // T^2 = 2, and 2 = (0, 1) in W_2(F_2).
  EXPECT_EQ(tt[0].coords, (std::vector<FiniteFieldSpec::Code>{0, 1}));
  EXPECT_TRUE(R.ptypical().is_zero(tt[1]));
  const auto coeffs = fpi_witt_coeffs(*named_spec("Z2[pi]"), 2);
  ASSERT_EQ(coeffs.size(), 2u);
  EXPECT_EQ(coeffs[0][0].code, 0u);
  EXPECT_EQ(coeffs[0][1].code, 1u);  // -2 = 2 in W_2(F_2)
}

TEST(Greenberg, RingAxiomsEnumerated) {
  GreenbergAlgebra<FiniteField> R(named_spec("Z2[pi]"), f2(), 2);
  GreenbergAlgebra<QuotientAlgebra> S(named_spec("Z2[pi]"), truncated(1, 2), 1);
  auto check = [](const auto& alg) {
    const auto all = alg.enumerate();
    ASSERT_EQ(all.size(), 16u);
    for (const auto& a : all) {
      EXPECT_TRUE(alg.equal(alg.mul(alg.one(), a), a));
      EXPECT_TRUE(alg.is_zero(alg.add(a, alg.neg(a))));
      for (const auto& b : all) {
        EXPECT_TRUE(alg.equal(alg.add(a, b), alg.add(b, a)));
        EXPECT_TRUE(alg.equal(alg.mul(a, b), alg.mul(b, a)));
        for (const auto& c : all) {
          EXPECT_TRUE(alg.equal(alg.mul(alg.mul(a, b), c), alg.mul(a, alg.mul(b, c))));
          EXPECT_TRUE(alg.equal(alg.mul(a, alg.add(b, c)), alg.add(alg.mul(a, b), alg.mul(a, c))));
        }
      }
    }
  };
  check(R);
  check(S);
}

TEST(Greenberg, WittVectorsOfResidueFieldAreTruncatedO) {
  // O/pi^2 = {a + b pi}, compared with W_{O,2}(F_2) through r with m = 1.
  auto spec = named_spec("Z2[pi]");
  GreenbergAlgebra<FiniteField> R(spec, f2(), 1);
  const auto& W = R.target();
  std::set<std::vector<FiniteFieldSpec::Code>> images;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const LocalElem x = LocalElem::from_coords(spec, {{a}, {b}}, 2);
      auto gx = R.from_local(x);
      auto wx = R.r(gx, 2);
      images.insert(wx.coords);
      EXPECT_TRUE(W.equal(wx, W.pi_series({FiniteFieldSpec::Code(a), FiniteFieldSpec::Code(b)})));
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) {
          const LocalElem y = LocalElem::from_coords(spec, {{c}, {d}}, 2);
          auto wy = R.r(R.from_local(y), 2);
          EXPECT_TRUE(W.equal(R.r(R.from_local(x * y), 2), W.mul(wx, wy)));
          EXPECT_TRUE(W.equal(R.r(R.from_local(x + y), 2), W.add(wx, wy)));
        }
    }
  EXPECT_EQ(images.size(), 4u);
  // Characteristic 2: 1 + 1 = 0.
  EXPECT_TRUE(W.is_zero(W.add(W.one(2), W.one(2))));
}

TEST(Greenberg, UnitAndGenerator) {
  auto spec = named_spec("Z2[pi]");
  GreenbergAlgebra<FiniteField> R(spec, f4(), 2);
  const auto& W = R.target();
  EXPECT_TRUE(W.equal(R.r(R.one(), 4), W.one(4)));
  EXPECT_TRUE(W.equal(R.r(R.generator(), 4), W.scalar(LocalElem::pi(spec, 8), W.one(4))));
}

TEST(Greenberg, HomomorphismLinearityAndFactorization) {
  for (const auto& name : {"Z2[pi]", "W(F4)"}) {
    auto spec = named_spec(name);
    GreenbergAlgebra<FiniteField> R(spec, f4(), 2);
    const int n = matched_length(*spec, 2);
    EXPECT_LE(R.required_m(n), 2);
    const auto all = R.enumerate();
    const std::vector<LocalElem> lambdas = {LocalElem::pi(spec, 8), LocalElem::from_int(spec, 3, 8),
                                            LocalElem::from_int(spec, 1, 8) + LocalElem::pi(spec, 8)};
    std::set<std::vector<FiniteFieldSpec::Code>> images;
    for (std::size_t i = 0; i < all.size(); ++i) {
      const auto rx = R.r(all[i], n);
      images.insert(rx.coords);
      EXPECT_TRUE(R.target().equal(rx, R.r_factorized(all[i], n)));
      for (const auto& lam : lambdas)
        EXPECT_TRUE(R.target().equal(R.r(R.mul(R.from_local(lam), all[i]), n), R.target().scalar(lam, rx)));
      for (std::size_t j = i; j < all.size(); j += 11) {
        const auto ry = R.r(all[j], n);
        EXPECT_TRUE(R.target().equal(R.r(R.add(all[i], all[j]), n), R.target().add(rx, ry)));
        EXPECT_TRUE(R.target().equal(R.r(R.mul(all[i], all[j]), n), R.target().mul(rx, ry)));
      }
    }
    EXPECT_EQ(images.size(), all.size()) << name;
    std::uint64_t expected = 1;
    for (int k = 0; k < n; ++k) expected *= 4;
    EXPECT_EQ(all.size(), expected) << name;
  }
}

TEST(Greenberg, InsufficientTruncation) {
  GreenbergAlgebra<FiniteField> R(named_spec("Z2[pi]"), f2(), 1);
  EXPECT_THROW(R.r(R.one(), 4), LengthError);
}

TEST(Greenberg, KernelUnramifiedCase) {
  // h = 2, e = 1; A must be an F_4-algebra.
  GreenbergAlgebra<QuotientAlgebra> R(named_spec("W(F4)"), truncated(2, 4), 2);
  const auto& A = R.ring();
  int count = 0;
  for (const auto& x : R.enumerate()) {
    const bool locus = A.is_zero(x[0][0]) && A.is_zero(A.pow(x[0][1], 2));
    const bool kernel = R.target().is_zero(R.r(x, 2));
    EXPECT_EQ(locus, kernel);
    count += kernel;
  }
  EXPECT_EQ(count, 16);
}

TEST(Greenberg, KernelTotallyRamifiedCase) {
  GreenbergAlgebra<QuotientAlgebra> R(named_spec("Z2[pi]"), truncated(1, 4), 2);
  const auto& A = R.ring();
  for (int n : {3, 4}) {
    int count = 0;
    for (const auto& x : R.enumerate()) {
      bool locus = true;
      for (int s = 0; s < n; ++s) {
        const int j = s / 2, i = s % 2;
        locus = locus && A.is_zero(A.pow(x[i][j], 1ULL << (j + i)));
      }
      const bool kernel = R.target().is_zero(R.r(x, n));
      EXPECT_EQ(locus, kernel);
      count += kernel;
    }
    EXPECT_EQ(count, n == 3 ? 256 : 128);
  }
}

TEST(Greenberg, NaturalityAlongF2ToF4) {
  auto spec = named_spec("Z2[pi]");
  GreenbergAlgebra<FiniteField> small(spec, f2(), 2);
  GreenbergAlgebra<FiniteField> big(spec, f4(), 2);
  for (const auto& x : small.enumerate()) EXPECT_TRUE(big.target().equal(small.r(x, 4), big.r(x, 4)));
}

TEST(Greenberg, NaturalityAlongQuotientMap) {
  auto spec = named_spec("Z2[pi]");
  GreenbergAlgebra<QuotientAlgebra> big(spec, truncated(1, 4), 1);
  GreenbergAlgebra<QuotientAlgebra> small(spec, truncated(1, 2), 1);
  auto proj = [&](std::uint64_t a) {
    auto c = big.ring().coords(a);
    c.resize(2);
    return small.ring().from_coords(c);
  };
  for (const auto& x : big.enumerate()) {
    auto px = x;
    for (auto& v : px)
      for (auto& c : v.coords) c = proj(c);
    auto rx = big.r(x, 2);
    for (auto& c : rx.coords) c = proj(c);
    EXPECT_TRUE(small.target().equal(rx, small.r(px, 2)));
  }
}

TEST(Greenberg, InjectiveOnBoundedPolynomials) {
  BoundedPoly A(FiniteFieldSpec::prime(2), "x", 64);
  GreenbergAlgebra<BoundedPoly> R(named_spec("Z2[pi]"), A, 3);
  std::mt19937_64 rng(11);
  int collisions = 0;
  for (int t = 0; t < 300; ++t) {
    auto x = R.zero(), y = R.zero();
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 3; ++j) {
        x[i][j] = A.random(rng, 3);
        y[i][j] = A.random(rng, 3);
      }
    if (R.equal(x, y)) continue;
    collisions += R.target().equal(R.r(x, 6), R.r(y, 6));
  }
  EXPECT_EQ(collisions, 0);
}
