#include <gtest/gtest.h>

#include <random>

#include "wittlab/errors.hpp"
#include "wittlab/local_ring.hpp"

using namespace wittlab;

namespace {

SpecPtr ramified2(int N = 8) { return LocalFieldSpec::create(2, 1, 2, {0, 1}, {{-2}, {0}, {1}}, N); }
SpecPtr unram4(int N = 8) { return LocalFieldSpec::unramified(2, {1, 1, 1}, N); }

// Extended Euclid inverse of a modulo m.
std::int64_t euclid_inverse(std::int64_t a, std::int64_t m) {
  std::int64_t r0 = m, r1 = ((a % m) + m) % m, s0 = 0, s1 = 1;
  while (r1) {
    std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
  }
  return ((s0 % m) + m) % m;
}

LocalElem random_elem(const SpecPtr& s, int N, std::mt19937_64& rng) {
  std::vector<std::vector<std::int64_t>> c(s->e(), std::vector<std::int64_t>(s->h()));
  for (auto& blk : c)
    for (auto& v : blk) v = static_cast<std::int64_t>(rng() % 100000) - 50000;
  return LocalElem::from_coords(s, c, N);
}

}  // namespace

TEST(LocalRing, PiSquaredIsTwo) {
  auto s = ramified2();
  auto pi = LocalElem::pi(s, 8);
  auto x = pi * pi;
  EXPECT_EQ(x, LocalElem::from_int(s, 2, 8));
  EXPECT_EQ(x.coord(0, 0), 2u);
  EXPECT_EQ(x.coord(1, 0), 0u);
}

TEST(LocalRing, OnePlusPiTimesOneMinusPi) {
  auto s = ramified2();
  auto one = LocalElem::from_int(s, 1, 8);
  auto pi = LocalElem::pi(s, 8);
  EXPECT_EQ((one + pi) * (one - pi), LocalElem::from_int(s, -1, 8));
}

TEST(LocalRing, RejectsBadSpecs) {
  EXPECT_THROW(LocalFieldSpec::create(2, 1, 2, {0, 1}, {{-4}, {0}, {1}}, 8), InputError);
  EXPECT_THROW(LocalFieldSpec::create(2, 1, 2, {0, 1}, {{-2}, {1}, {1}}, 8), InputError);
  EXPECT_THROW(LocalFieldSpec::create(2, 2, 1, {1, 0, 1}, {{-2, 0}, {1, 0}}, 8), InputError);
  EXPECT_THROW(LocalFieldSpec::create(4, 1, 1, {0, 1}, {{-4}, {1}}, 8), InputError);
  EXPECT_THROW(LocalFieldSpec::create(2, 1, 1, {0, 1}, {{-2}, {1}}, 1000), InputError);
}

TEST(LocalRing, MismatchedSpecsThrow) {
  auto a = LocalElem::from_int(ramified2(), 1, 4);
  auto b = LocalElem::from_int(unram4(), 1, 4);
  EXPECT_THROW(a + b, MismatchError);
}

TEST(LocalRing, PrecisionIsMinimum) {
  auto s = ramified2();
  auto a = LocalElem::from_int(s, 3, 5);
  auto b = LocalElem::from_int(s, 1, 7);
  EXPECT_EQ((a + b).precision(), 5);
  EXPECT_EQ((a * b).precision(), 5);
}

TEST(LocalRing, UnitInverseMatchesEuclid) {
  auto s = LocalFieldSpec::p_adic_integers(3, 10);
  auto x = LocalElem::from_int(s, 2, 10);
  auto y = unit_inverse(x);
  const std::int64_t m = 59049;  // 3^10
  EXPECT_EQ(static_cast<std::int64_t>(y.coord(0, 0)), euclid_inverse(2, m));
  EXPECT_EQ(x * y, LocalElem::from_int(s, 1, 10));
}

TEST(LocalRing, UnitInverseRandomized) {
  std::mt19937_64 rng(7);
  for (auto s : {ramified2(12), unram4(6)}) {
    for (int t = 0; t < 50; ++t) {
      auto x = random_elem(s, s->default_precision(), rng);
      if (!x.is_unit()) continue;
      EXPECT_EQ(x * unit_inverse(x), LocalElem::from_int(s, 1, s->default_precision()));
    }
  }
}

TEST(LocalRing, InverseOfPiIsNonUnitError) {
  auto s = ramified2();
  EXPECT_THROW(unit_inverse(LocalElem::pi(s, 8)), NonUnitError);
  EXPECT_THROW(unit_inverse(LocalElem(s, 0)), PrecisionError);
}

TEST(LocalRing, ExactDivision) {
  auto s = ramified2();
  auto pi = LocalElem::pi(s, 8);
  EXPECT_EQ(exact_div_by_pi_power(pi * pi, 2), LocalElem::from_int(s, 1, 6));
  EXPECT_EQ(exact_div_by_pi_power(LocalElem::from_int(s, 2, 8), 2), LocalElem::from_int(s, 1, 6));
  auto x = LocalElem::from_int(s, 2, 8) + pi;
  EXPECT_THROW(exact_div_by_pi_power(x, 2), ValuationError);
  auto y = exact_div_by_pi_power(x, 1);
  EXPECT_EQ(y.precision(), 7);
  EXPECT_EQ(y, pi + LocalElem::from_int(s, 1, 8));
  EXPECT_EQ(pi * y, x);
  EXPECT_THROW(exact_div_by_pi_power(LocalElem(s, 2), 2), PrecisionError);
}

TEST(LocalRing, DivisionInvertsMultiplicationByPiPower) {
  std::mt19937_64 rng(11);
  auto s = LocalFieldSpec::create(3, 2, 3, {2, 2, 1}, {{3, 0}, {-3, 3}, {6, 0}, {1, 0}}, 12);
  auto pi = LocalElem::pi(s, 12);
  for (int t = 0; t < 40; ++t) {
    auto x = random_elem(s, 12, rng);
    int n = static_cast<int>(rng() % 5);
    auto prod = pow(pi, n) * x;
    auto back = exact_div_by_pi_power(prod, n);
    EXPECT_EQ(back, x.reduced(back.precision()));
  }
}

TEST(LocalRing, TeichmullerLifts) {
  auto s3 = LocalFieldSpec::p_adic_integers(3, 8);
  auto f3 = s3->residue_field();
  EXPECT_EQ(teichmuller_lift({f3, 2}, s3, 8), LocalElem::from_int(s3, -1, 8));
  EXPECT_TRUE(teichmuller_lift({f3, 0}, s3, 8).is_zero());
  EXPECT_EQ(teichmuller_lift({f3, 1}, s3, 8), LocalElem::from_int(s3, 1, 8));

  auto s = unram4();
  auto f = s->residue_field();
  for (FiniteFieldSpec::Code t = 0; t < 4; ++t) {
    auto x = teichmuller_lift({f, t}, s, 8);
    EXPECT_EQ(pow(x, 4), x);
    EXPECT_EQ(residue(x).code, t);
    for (FiniteFieldSpec::Code u = 0; u < 4; ++u)
      EXPECT_EQ(teichmuller_lift({f, f->mul(t, u)}, s, 8), x * teichmuller_lift({f, u}, s, 8));
  }
}

TEST(LocalRing, Residue) {
  auto s = ramified2();
  auto pi = LocalElem::pi(s, 8);
  EXPECT_EQ(residue(pi).code, 0u);
  EXPECT_EQ(residue(pi + LocalElem::from_int(s, 1, 8)).code, 1u);
}

TEST(LocalRing, ResidueFieldOps) {
  auto f = FiniteFieldSpec::with_degree(2, 2);
  const FiniteFieldSpec::Code w = 2;
  EXPECT_EQ(f->mul(f->p_root(w), f->p_root(w)), w);
  EXPECT_EQ(f->p_root(w), f->mul(w, w));
  EXPECT_EQ(f->pow(w, 3), 1u);
  EXPECT_EQ(f->p_root(0), 0u);
  EXPECT_EQ(f->p_root(1), 1u);
}

TEST(LocalRing, UnramToWittCoords) {
  auto s = LocalFieldSpec::p_adic_integers(2, 6);
  auto c3 = unram_to_witt_coords(LocalElem::from_int(s, 3, 6), 2);
  EXPECT_EQ(c3[0].code, 1u);
  EXPECT_EQ(c3[1].code, 1u);
  auto c2 = unram_to_witt_coords(LocalElem::from_int(s, 2, 6), 2);
  EXPECT_EQ(c2[0].code, 0u);
  EXPECT_EQ(c2[1].code, 1u);
  auto c1 = unram_to_witt_coords(LocalElem::from_int(s, 1, 6), 2);
  EXPECT_EQ(c1[0].code, 1u);
  EXPECT_EQ(c1[1].code, 0u);
}

TEST(LocalRing, WittCoordsRoundTrip) {
  // Oracle: re-sum the Teichmuller digit expansion.
  auto s = unram4(4);
  auto f = s->residue_field();
  for (std::int64_t a = 0; a < 16; ++a)
    for (std::int64_t b = 0; b < 16; ++b) {
      auto x = LocalElem::from_coords(s, {{a, b}}, 4);
      auto c = unram_to_witt_coords(x, 4);
      LocalElem sum(s, 4);
      LocalElem pj = LocalElem::from_int(s, 1, 4);
      for (int j = 0; j < 4; ++j) {
        FiniteFieldSpec::Code t = c[j].code;
        for (int k = 0; k < j; ++k) t = f->p_root(t);
        sum += teichmuller_lift({f, t}, s, 4) * pj;
        pj = pj * LocalElem::from_int(s, 2, 4);
      }
      EXPECT_EQ(sum, x);
      EXPECT_EQ(witt_coords_to_unram(c, s), x);
    }
}

TEST(LocalRing, RingAxiomsRandomized) {
  std::mt19937_64 rng(3);
  for (auto s : {ramified2(10), unram4(8), LocalFieldSpec::p_adic_integers(3, 10)}) {
    const int N = s->default_precision();
    for (int t = 0; t < 100; ++t) {
      auto a = random_elem(s, N, rng), b = random_elem(s, N, rng), c = random_elem(s, N, rng);
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a * b, b * a);
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ(a + LocalElem(s, N), a);
    }
  }
}

TEST(LocalRing, PrecisionIsALowerBound) {
  std::mt19937_64 rng(5);
  auto s = ramified2(12);
  auto pi = LocalElem::pi(s, 12);
  for (int t = 0; t < 50; ++t) {
    auto a = random_elem(s, 12, rng) * pow(pi, rng() % 4);
    auto b = random_elem(s, 12, rng);
    auto lo = a.reduced(6) * b.reduced(9);
    auto hi = a * b;
    EXPECT_EQ(hi.reduced(lo.precision()), lo);
  }
}

TEST(LocalRing, JsonRoundTrip) {
  auto s = LocalFieldSpec::from_json(
      nlohmann::json::parse(R"({"p":2,"h":1,"e":2,"unram_modulus":[0,1],"eisenstein":[[-2],[0],[1]],"precision":8})"));
  EXPECT_EQ(s->e(), 2);
  EXPECT_EQ(s->fingerprint(), ramified2(5)->fingerprint());
  auto x = LocalElem::pi(s, 8) + LocalElem::from_int(s, -3, 8);
  EXPECT_EQ(LocalElem::from_json(s, x.to_json()), x);
}
