#include <gtest/gtest.h>

#include <chrono>
#include <set>

#include "wittlab/witt.hpp"

using namespace wittlab;

namespace {

SpecPtr z2() { return LocalFieldSpec::p_adic_integers(2, 16); }
SpecPtr ram2() { return LocalFieldSpec::create(2, 1, 2, {0, 1}, {{-2}, {0}, {1}}, 16); }
SpecPtr wf4() { return LocalFieldSpec::unramified(2, {1, 1, 1}, 16); }
FiniteField f2() { return FiniteField(FiniteFieldSpec::prime(2)); }
FiniteField f4() { return FiniteField(FiniteFieldSpec::create(2, std::vector<std::int64_t>{1, 1, 1})); }
QuotientAlgebra dual() { return QuotientAlgebra::parse({{"p", 2}, {"vars", {"x"}}, {"ideal", {"x^2"}}}); }

constexpr FiniteFieldSpec::Code kW = 2;  // w in F_4

}  // namespace

TEST(Witt, GhostOfTeichmuller) {
  WittRing<FiniteField> w(z2(), f4());
  for (FiniteFieldSpec::Code b = 0; b < 4; ++b) {
    auto g = w.ghost(w.teichmuller(b, 3));
    EXPECT_EQ(g[0], b);
    EXPECT_EQ(g[1], f4().pow(b, 2));
    EXPECT_EQ(g[2], f4().pow(b, 4));
  }
  // Over a k-algebra higher coordinates are invisible.
  EXPECT_EQ(w.ghost({{kW, 1, 3}}), w.ghost({{kW, 0, 0}}));
}

TEST(Witt, GhostOverTorsionFreeLift) {
  TorsionFreeLift lift(z2(), {}, 10);
  WittRing<TorsionFreeLift> w(z2(), lift);
  auto g = w.ghost({{lift.constant(1), lift.constant(1)}});
  EXPECT_TRUE(lift.equal(g[0], lift.constant(1)));
  EXPECT_TRUE(lift.equal(g[1], lift.constant(3)));
}

TEST(Witt, GhostIsHomomorphismOverLift) {
  // Generic inputs: the ghost map turns Witt operations into componentwise ones.
  for (auto spec : {z2(), ram2(), wf4()}) {
    TorsionFreeLift lift(spec, {"a0", "a1", "a2", "b0", "b1", "b2"}, 8);
    WittRing<TorsionFreeLift> w(spec, lift);
    WittVector<MPoly> x{{lift.variable(0), lift.variable(1), lift.variable(2)}};
    WittVector<MPoly> y{{lift.variable(3), lift.variable(4), lift.variable(5)}};
    auto gx = w.ghost(x), gy = w.ghost(y), gs = w.ghost(w.add(x, y)), gp = w.ghost(w.mul(x, y));
    for (int m = 0; m < 3; ++m) {
      EXPECT_TRUE(lift.equal(gs[m], gx[m] + gy[m]));
      EXPECT_TRUE(lift.equal(gp[m], gx[m] * gy[m]));
    }
  }
}

TEST(Witt, RamifiedAdditionOverF2) {
  WittRing<FiniteField> w(ram2(), f2());
  auto s = w.add({{1, 0}}, {{1, 0}});
  EXPECT_TRUE(w.equal(s, {{0, 0}}));
  // Oracle: O/pi^2 = {a + b pi}, with the isomorphism a + b pi <-> [a] + pi [b].
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const int sa = a & 1, ta = a >> 1, sb = b & 1, tb = b >> 1;
      // (sa + ta pi) + (sb + tb pi) mod pi^2, with 2 = pi^2 = 0
      const int s0 = (sa + sb) % 2, s1 = (ta + tb) % 2;
      // products: pi^2 = 0
      const int p0 = sa * sb, p1 = (sa * tb + ta * sb) % 2;
      auto x = w.pi_series({FiniteFieldSpec::Code(sa), FiniteFieldSpec::Code(ta)});
      auto y = w.pi_series({FiniteFieldSpec::Code(sb), FiniteFieldSpec::Code(tb)});
      EXPECT_TRUE(w.equal(w.add(x, y), w.pi_series({FiniteFieldSpec::Code(s0), FiniteFieldSpec::Code(s1)})));
      EXPECT_TRUE(w.equal(w.mul(x, y), w.pi_series({FiniteFieldSpec::Code(p0), FiniteFieldSpec::Code(p1)})));
    }
}

TEST(Witt, AdditiveInverseEnumerated) {
  WittRing<FiniteField> w(z2(), f4());
  for (const auto& x : w.enumerate(3)) EXPECT_TRUE(w.is_zero(w.add(x, w.neg(x))));
}

TEST(Witt, RingAxiomsEnumerated) {
  for (auto spec : {z2(), ram2()}) {
    WittRing<QuotientAlgebra> w(spec, dual());
    const auto all = w.enumerate(3);
    const auto one = w.one(3);
    for (const auto& x : all) {
      EXPECT_TRUE(w.equal(w.mul(one, x), x));
      for (const auto& y : all) {
        EXPECT_TRUE(w.equal(w.add(x, y), w.add(y, x)));
        EXPECT_TRUE(w.equal(w.mul(x, y), w.mul(y, x)));
      }
    }
    for (std::size_t i = 0; i < all.size(); i += 3)
      for (std::size_t j = 0; j < all.size(); j += 2)
        for (const auto& z : all) {
          const auto& x = all[i];
          const auto& y = all[j];
          EXPECT_TRUE(w.equal(w.mul(w.mul(x, y), z), w.mul(x, w.mul(y, z))));
          EXPECT_TRUE(w.equal(w.add(w.add(x, y), z), w.add(x, w.add(y, z))));
          EXPECT_TRUE(w.equal(w.mul(x, w.add(y, z)), w.add(w.mul(x, y), w.mul(x, z))));
        }
  }
}

TEST(Witt, LengthOneIsTheRingItself) {
  WittRing<FiniteField> w(ram2(), f4());
  auto r = f4();
  for (FiniteFieldSpec::Code a = 0; a < 4; ++a)
    for (FiniteFieldSpec::Code b = 0; b < 4; ++b) {
      EXPECT_EQ(w.add({{a}}, {{b}})[0], r.add(a, b));
      EXPECT_EQ(w.mul({{a}}, {{b}})[0], r.mul(a, b));
    }
}

TEST(Witt, FrobeniusOnKAlgebraIsCoordinatewise) {
  WittRing<FiniteField> w(z2(), f4());
  auto fx = w.frobenius({{kW, kW, kW}});
  EXPECT_EQ(fx[0], f4().mul(kW, kW));
  EXPECT_EQ(fx[1], f4().mul(kW, kW));
}

TEST(Witt, FVIdentities) {
  const auto t0 = std::chrono::steady_clock::now();
  for (auto spec : {z2(), ram2(), wf4()}) {
    WittRing<FiniteField> w(spec, f4());
    const LocalElem pi = LocalElem::pi(spec, 16);
    for (const auto& x : w.enumerate(3)) {
      EXPECT_TRUE(w.equal(w.frobenius(w.verschiebung(x)), w.scalar(pi, x)));
      auto x4 = w.from_coords({x[0], x[1], x[2], x[0]});
      EXPECT_TRUE(w.equal(w.verschiebung(w.frobenius(x4)), w.scalar(pi, x4)));
    }
  }
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 5.0);
}

TEST(Witt, VerschiebungProjectionFormula) {
  // x * V(c) = V(F(x) * c)
  WittRing<QuotientAlgebra> w(z2(), dual());
  const auto all2 = w.enumerate(2);
  for (const auto& x : w.enumerate(3))
    for (const auto& c : all2) EXPECT_TRUE(w.equal(w.mul(x, w.verschiebung(c)), w.verschiebung(w.mul(w.frobenius(x), c))));
}

TEST(Witt, TeichmullerIsMultiplicativeSection) {
  WittRing<QuotientAlgebra> w(ram2(), dual());
  auto r = dual();
  for (std::uint64_t a = 0; a < 4; ++a)
    for (std::uint64_t b = 0; b < 4; ++b)
      EXPECT_TRUE(w.equal(w.mul(w.teichmuller(a, 3), w.teichmuller(b, 3)), w.teichmuller(r.mul(a, b), 3)));
}

TEST(Witt, GlueAndDigitExpansion) {
  WittRing<QuotientAlgebra> w(z2(), dual());
  for (const auto& x : w.enumerate(4)) {
    auto sum = w.zero(4);
    std::vector<WittVector<std::uint64_t>> parts;
    for (int i = 0; i < 4; ++i) {
      auto v = w.teichmuller(x[i], 4 - i);
      for (int k = 0; k < i; ++k) v = w.verschiebung(v);
      sum = w.add(sum, v);
      parts.push_back(v);
    }
    EXPECT_TRUE(w.equal(sum, x));
    EXPECT_TRUE(w.equal(w.glue(parts), x));
  }
  EXPECT_THROW(w.glue({{{1, 0}}, {{1, 1}}}), InputError);
}

TEST(Witt, PiSeriesClosedFormAndBijection) {
  WittRing<FiniteField> w(z2(), f4());
  auto r = f4();
  std::set<std::vector<FiniteFieldSpec::Code>> images;
  for (FiniteFieldSpec::Code b0 = 0; b0 < 4; ++b0)
    for (FiniteFieldSpec::Code b1 = 0; b1 < 4; ++b1) {
      auto x = w.pi_series({b0, b1});
      EXPECT_EQ(x[0], b0);
      EXPECT_EQ(x[1], r.pow(b1, 2));
      images.insert(x.coords);
      auto d = w.pi_series_inverse(x);
      EXPECT_EQ(d[0], b0);
      EXPECT_EQ(d[1], b1);
    }
  EXPECT_EQ(images.size(), 16u);
  EXPECT_TRUE(w.equal(w.pi_series({kW, 0}), w.teichmuller(kW, 2)));
}

TEST(Witt, PiSeriesInverseNeedsRoots) {
  WittRing<QuotientAlgebra> w(z2(), dual());
  EXPECT_THROW(w.pi_series_inverse({{0, 2}}), UnsupportedError);
}

TEST(Witt, ChangeOfUniformizerRoundTrip) {
  auto spec = LocalFieldSpec::p_adic_integers(3, 12);
  WittRing<QuotientAlgebra> w(spec, QuotientAlgebra::parse({{"p", 3}, {"vars", {"x"}}, {"ideal", {"x^2"}}}));
  const LocalElem unit = LocalElem::from_int(spec, -1, 12);
  for (const auto& x : w.enumerate(2)) {
    auto y = w.change_uniformizer(unit, false, x);
    EXPECT_TRUE(w.equal(w.change_uniformizer(unit, true, y), x));
  }
}

TEST(Witt, ScalarActionIsLinear) {
  WittRing<FiniteField> w(ram2(), f4());
  const LocalElem lam = LocalElem::from_coords(ram2(), {{3}, {1}}, 16);
  for (const auto& x : w.enumerate(2))
    for (const auto& y : w.enumerate(2))
      EXPECT_TRUE(w.equal(w.scalar(lam, w.add(x, y)), w.add(w.scalar(lam, x), w.scalar(lam, y))));
}
