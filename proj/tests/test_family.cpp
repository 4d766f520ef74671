#include <gtest/gtest.h>

#include <chrono>
#include <filesystem>
#include <random>

#include "wittlab/errors.hpp"
#include "wittlab/family.hpp"

using namespace wittlab;

namespace {

SpecPtr z2() { return LocalFieldSpec::p_adic_integers(2, 16); }
SpecPtr z3() { return LocalFieldSpec::p_adic_integers(3, 16); }
SpecPtr ram2() { return LocalFieldSpec::create(2, 1, 2, {0, 1}, {{-2}, {0}, {1}}, 16); }
SpecPtr wf4() { return LocalFieldSpec::unramified(2, {1, 1, 1}, 16); }

// Integer evaluation of a polynomial over Z_p modulo 2^62-ish: independent of
// the polynomial product code.
__int128 eval_int(const MPoly& f, const std::vector<std::int64_t>& x, std::int64_t mod) {
  __int128 acc = 0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    __int128 t = f.term_coeff(k).signed_coords()[0][0];
    for (int i = 0; i < f.num_vars(); ++i)
      for (int e = 0; e < f.terms()[k].exps[i]; ++e) t = t * x[i] % mod;
    acc = (acc + t) % mod;
  }
  return (acc % mod + mod) % mod;
}

__int128 ghost_int(const std::vector<__int128>& c, int m, std::int64_t p, std::int64_t mod) {
  __int128 acc = 0, pi = 1;
  for (int i = 0; i <= m; ++i) {
    // c_i^(p^(m-i)) by repeated multiplication
    __int128 t = 1;
    __int128 base = c[i] % mod;
    std::int64_t ex = 1;
    for (int e = 0; e < m - i; ++e) ex *= p;
    for (std::int64_t e = 0; e < ex; ++e) t = t * base % mod;
    acc = (acc + pi * t) % mod;
    pi = pi * p % mod;
  }
  return (acc % mod + mod) % mod;
}

}  // namespace

TEST(Family, ClassicalSumAndProduct) {
  auto s = witt_family(z2(), "sum", {}, 2);
  EXPECT_EQ(s->polys[0].format(), "X0 + Y0");
  EXPECT_EQ(s->polys[1].format(), "X1 + Y1 - X0*Y0");
  auto p = witt_family(z2(), "prod", {}, 2);
  EXPECT_EQ(p->polys[0].format(), "X0*Y0");
  EXPECT_EQ(p->polys[1].format(), "2*X1*Y1 + X0^2*Y1 + X1*Y0^2");
}

TEST(Family, IntegerOracleOnSumAndProduct) {
  // Phi_m(G(x, y)) = Phi_m(x) (+ or *) Phi_m(y) over the integers modulo 2^k.
  std::mt19937_64 rng(1);
  for (const char* kind : {"sum", "prod"}) {
    auto f = witt_family(z2(), kind, {}, 3);
    const std::int64_t mod = 1LL << (f->polys[2].precision());
    for (int t = 0; t < 30; ++t) {
      std::vector<std::int64_t> v(6);
      for (auto& x : v) x = static_cast<std::int64_t>(rng() % 50) - 25;
      std::vector<__int128> g, xs, ys;
      for (int m = 0; m < 3; ++m) g.push_back(eval_int(f->polys[m], v, mod));
      for (int i = 0; i < 3; ++i) xs.push_back(v[i]), ys.push_back(v[3 + i]);
      for (int m = 0; m < 3; ++m) {
        const __int128 a = ghost_int(xs, m, 2, mod), b = ghost_int(ys, m, 2, mod);
        const __int128 want = std::string(kind) == "sum" ? (a + b) % mod : a * b % mod;
        EXPECT_EQ(static_cast<std::int64_t>(ghost_int(g, m, 2, mod)), static_cast<std::int64_t>(want));
      }
    }
  }
}

TEST(Family, GhostIdentityAllKinds) {
  const nlohmann::json lam = {{"lambda", 5}};
  for (auto spec : {z2(), z3(), ram2(), wf4()}) {
    for (const auto& [kind, params] : std::vector<std::pair<std::string, nlohmann::json>>{
             {"sum", {}}, {"prod", {}}, {"neg", {}}, {"scalar", lam}, {"frobenius", {}}}) {
      const int n = 3;
      auto pb = witt_problem(kind, spec, params, n);
      auto f = solve_family(pb);
      std::string why;
      EXPECT_TRUE(ghost_identity_holds(pb, f, &why)) << kind << ": " << why;
    }
  }
}

TEST(Family, FrobeniusIsQPowerModPi) {
  for (auto spec : {z2(), z3(), ram2(), wf4()}) {
    auto f = witt_family(spec, "frobenius", {}, 3);
    for (int m = 0; m < 3; ++m) {
      auto vars = f->vars;
      MPoly diff = f->polys[m] - var_power(spec, vars, m, spec->q(), f->polys[m].precision());
      for (std::size_t k = 0; k < diff.size(); ++k) EXPECT_GE(diff.term_coeff(k).valuation(), 1);
    }
  }
}

TEST(Family, UniformizerChange) {
  auto s = z3();
  auto h = witt_family(s, "uniformizer_change", {{"unit", -1}}, 2);
  EXPECT_EQ(h->polys[0].format(), "X0");
  EXPECT_EQ(h->polys[1].format(), "-X1");
  auto id = witt_family(s, "uniformizer_change", {{"unit", 1}}, 3);
  for (int m = 0; m < 3; ++m) EXPECT_EQ(id->polys[m].format(), "X" + std::to_string(m));
}

TEST(Family, UniformizerChangeRoundTrip) {
  for (auto [spec, unit] : std::vector<std::pair<SpecPtr, int>>{{z3(), -1}, {z2(), 3}, {ram2(), 5}}) {
    auto fwd = witt_family(spec, "uniformizer_change", {{"unit", unit}}, 3);
    auto rev = witt_family(spec, "uniformizer_change", {{"unit", unit}, {"reverse", true}}, 3);
    for (int m = 0; m < 3; ++m) {
      auto comp = rev->polys[m].compose(fwd->polys);
      auto x = MPoly::variable(spec, fwd->vars, m, comp.precision());
      EXPECT_EQ(comp, x) << comp.format();
    }
  }
}

TEST(Family, IntegralityFailureIsReported) {
  // Targets that are not ghost vectors: Phi_1 target X1 alone.
  auto spec = z2();
  GhostProblem pb = witt_problem("neg", spec, {}, 2);
  pb.targets[1] = MPoly::variable(spec, pb.vars, 1, pb.precision);
  EXPECT_THROW(solve_family(pb), IntegralityError);
}

TEST(Family, MasterCheckTiming) {
  FamilyCache cache;
  const auto t0 = std::chrono::steady_clock::now();
  for (auto spec : {z2(), z3(), ram2(), wf4()})
    for (const char* kind : {"sum", "prod"}) {
      auto pb = witt_problem(kind, spec, {}, 4);
      auto f = solve_family(pb);
      EXPECT_TRUE(ghost_identity_holds(pb, f));
    }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  EXPECT_LT(secs, 10.0);
}

TEST(Family, CacheRoundTripIsBitExact) {
  const auto dir = std::filesystem::temp_directory_path() / "wittlab_family_cache_test";
  std::filesystem::remove_all(dir);
  FamilyCache first(dir);
  auto a = witt_family(z2(), "prod", {}, 3, first);
  FamilyCache second(dir);
  auto b = witt_family(z2(), "prod", {}, 2, second);
  EXPECT_EQ(second.stats().disk_loads, 1);
  EXPECT_EQ(second.stats().computed, 0);
  EXPECT_EQ(a->to_json().dump(), b->to_json().dump());
  for (int m = 0; m < 3; ++m) EXPECT_EQ(a->polys[m], b->polys[m]);
  std::filesystem::remove_all(dir);
}
