#include <gtest/gtest.h>

#include <random>

#include "wittlab/coeff_ring.hpp"

using namespace wittlab;

namespace {

FiniteField f2() { return FiniteField(FiniteFieldSpec::prime(2)); }
FiniteField f4() { return FiniteField(FiniteFieldSpec::with_degree(2, 2)); }

QuotientAlgebra dual_numbers() {
  return QuotientAlgebra::parse({{"p", 2}, {"d", 1}, {"vars", {"x"}}, {"ideal", {"x^2"}}});
}

template <class R>
void check_ring_axioms(const R& r) {
  const auto n = r.size();
  for (std::uint64_t i = 0; i < n; ++i)
    for (std::uint64_t j = 0; j < n; ++j) {
      const auto a = r.element(i), b = r.element(j);
      EXPECT_TRUE(r.equal(r.add(a, b), r.add(b, a)));
      EXPECT_TRUE(r.equal(r.mul(a, b), r.mul(b, a)));
      EXPECT_TRUE(r.is_zero(r.add(a, r.neg(a))));
      for (std::uint64_t k = 0; k < n; ++k) {
        const auto c = r.element(k);
        EXPECT_TRUE(r.equal(r.mul(r.mul(a, b), c), r.mul(a, r.mul(b, c))));
        EXPECT_TRUE(r.equal(r.mul(a, r.add(b, c)), r.add(r.mul(a, b), r.mul(a, c))));
      }
    }
  for (std::uint64_t i = 0; i < n; ++i) EXPECT_TRUE(r.equal(r.mul(r.one(), r.element(i)), r.element(i)));
}

}  // namespace

TEST(CoeffRing, FiniteFieldF4) {
  auto r = f4();
  EXPECT_EQ(r.size(), 4u);
  check_ring_axioms(r);
  for (std::uint64_t i = 0; i < 4; ++i) {
    auto x = r.element(i);
    EXPECT_EQ(*r.q_root(r.pow(x, 2), 2), x);
    EXPECT_EQ(r.pow(*r.q_root(x, 4), 4), x);
  }
}

TEST(CoeffRing, DualNumbers) {
  auto r = dual_numbers();
  EXPECT_EQ(r.size(), 4u);
  EXPECT_EQ(r.mul(r.variable(0), r.variable(0)), r.zero());
  check_ring_axioms(r);
  EXPECT_EQ(r.format(r.from_json("1+x")), "1 + x");
}

TEST(CoeffRing, QuotientVariants) {
  auto two_vars = QuotientAlgebra::parse({{"p", 2}, {"vars", {"x", "y"}}, {"ideal", {"x^2", "y^2", "x*y"}}});
  EXPECT_EQ(two_vars.dimension(), 3);
  check_ring_axioms(two_vars);
  auto principal = QuotientAlgebra::parse({{"p", 3}, {"var", "x"}, {"ideal", {"x^2+1"}}});
  EXPECT_EQ(principal.size(), 9u);
  auto x = principal.variable(0);
  EXPECT_EQ(principal.mul(x, x), principal.neg(principal.one()));
  check_ring_axioms(principal);
  auto f4x = QuotientAlgebra::parse({{"p", 2}, {"d", 2}, {"vars", {"x"}}, {"ideal", {"x^2"}}});
  EXPECT_EQ(f4x.size(), 16u);
  EXPECT_THROW(QuotientAlgebra::parse({{"p", 2}, {"vars", {"x", "y"}}, {"ideal", {"x^2"}}}), InputError);
  EXPECT_THROW(QuotientAlgebra::parse({{"p", 2}, {"vars", {"x", "y"}}, {"ideal", {"x^2+y"}}}), UnsupportedError);
}

TEST(CoeffRing, BoundedPolyCap) {
  BoundedPoly r(FiniteFieldSpec::prime(2), "x", 64);
  std::vector<FiniteFieldSpec::Code> a(41, 0);
  a[40] = 1;
  EXPECT_THROW(r.mul(a, a), DegreeCapError);
  EXPECT_EQ(BoundedPoly::degree(r.mul(r.from_json("x+1"), r.from_json("x+1"))), 2);
  EXPECT_EQ(r.format(r.mul(r.from_json("x+1"), r.from_json("x+1"))), "1 + x^2");
  EXPECT_THROW(BoundedPoly(FiniteFieldSpec::prime(2), "x", 0), InputError);
}

TEST(CoeffRing, InvalidModulusRejected) {
  EXPECT_THROW(field_from_json({{"p", 2}, {"modulus", {1, 0, 1}}}), InputError);
}

TEST(CoeffRing, SemiperfectLevel) {
  EXPECT_TRUE(semiperfect_level(f4(), 2, 3));
  EXPECT_FALSE(semiperfect_level(dual_numbers(), 2, 2));
  EXPECT_TRUE(semiperfect_level(dual_numbers(), 2, 1));
  ProductRing<FiniteField> prod({f2(), f4()});
  EXPECT_TRUE(semiperfect_level(prod, 2, 3));
  EXPECT_EQ(prod.size(), 8u);
}

TEST(CoeffRing, StructureMapIsHomomorphism) {
  auto spec = LocalFieldSpec::create(2, 2, 2, {1, 1, 1}, {{-2, 0}, {2, 2}, {1, 0}}, 8);
  auto r = QuotientAlgebra::parse({{"p", 2}, {"modulus", {1, 1, 1}}, {"vars", {"x"}}, {"ideal", {"x^2"}}});
  std::mt19937_64 rng(2);
  for (int t = 0; t < 200; ++t) {
    auto a = LocalElem::from_coords(spec, {{static_cast<std::int64_t>(rng() % 64), static_cast<std::int64_t>(rng() % 64)},
                                           {static_cast<std::int64_t>(rng() % 64), 3}}, 8);
    auto b = LocalElem::from_coords(spec, {{static_cast<std::int64_t>(rng() % 64), 1}, {5, 2}}, 8);
    EXPECT_EQ(r.from_local(a * b), r.mul(r.from_local(a), r.from_local(b)));
    EXPECT_EQ(r.from_local(a + b), r.add(r.from_local(a), r.from_local(b)));
  }
}

TEST(CoeffRing, TorsionFreeLiftPiInjective) {
  auto spec = LocalFieldSpec::create(2, 1, 2, {0, 1}, {{-2}, {0}, {1}}, 10);
  TorsionFreeLift r(spec, {"a", "b"}, 10);
  auto pi = r.from_local(LocalElem::pi(spec, 10));
  std::mt19937_64 rng(4);
  for (int t = 0; t < 50; ++t) {
    auto f = r.from_json(std::to_string(rng() % 9) + "*a^2 - " + std::to_string(rng() % 5) + "*b + 3");
    auto g = r.from_json(std::to_string(rng() % 9) + "*a^2 - " + std::to_string(rng() % 5) + "*b + 3");
    if (r.equal(r.mul(pi, f), r.mul(pi, g))) EXPECT_TRUE(r.equal(f.reduced(9), g.reduced(9)));
    else EXPECT_FALSE(r.equal(f, g));
  }
}

TEST(CoeffRing, EmbeddingRules) {
  auto f4spec = FiniteFieldSpec::with_degree(2, 2);
  auto f2spec = FiniteFieldSpec::prime(2);
  EXPECT_EQ(embed_residue({f2spec, 1}, *f4spec), 1u);
  EXPECT_THROW(embed_residue({f4spec, 2}, *f2spec), MismatchError);
}
