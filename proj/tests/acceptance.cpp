// Acceptance suite: one PASS/FAIL line per criterion. Every criterion runs
// against its own empty on-disk cache, so the reported times are cold.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "wittlab/catalog.hpp"
#include "wittlab/verify.hpp"
#include "wittlab/witt.hpp"

using namespace wittlab;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

fs::path scratch_dir(int id) {
  static std::mt19937_64 rng(std::random_device{}());
  auto dir = fs::temp_directory_path() / ("wittlab-acceptance-" + std::to_string(id) + "-" + std::to_string(rng()));
  fs::create_directories(dir);
  return dir;
}

void run_into(Outcome& out, const std::string& suite, VerifyOptions o, FamilyCache& cache,
              const std::function<void(const VerifyReport&, Outcome&)>& extra = {}) {
  o.cache = &cache;
  const auto report = run_suite(suite, o);
  for (const auto& p : report.properties)
    if (!p.passed) out.fail(suite + ": " + p.name + " witness " + p.witness.dump());
  if (report.properties.empty()) out.fail(suite + ": no properties checked");
  if (extra) extra(report, out);
}

// Every property whose name contains `needle` must have been checked exactly `count` times.
std::function<void(const VerifyReport&, Outcome&)> expect_checked(const std::string& needle, int count) {
  return [needle, count](const VerifyReport& r, Outcome& out) {
    int seen = 0;
    for (const auto& p : r.properties) {
      if (p.name.find(needle) == std::string::npos) continue;
      ++seen;
      if (p.checked != count)
        out.fail(r.suite + ": " + p.name + " checked " + std::to_string(p.checked) + ", expected " +
                 std::to_string(count));
    }
    if (seen == 0) out.fail(r.suite + ": no property matching \"" + needle + "\"");
  };
}

// Integer evaluation of a family polynomial over Z_p (e = f = 1).
std::int64_t eval_int(const MPoly& f, const std::vector<std::int64_t>& x) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    std::int64_t t = f.term_coeff(i).signed_coords().at(0).at(0);
    for (int v = 0; v < f.num_vars(); ++v)
      for (int k = 0; k < static_cast<int>(f.terms()[i].exps[v]); ++k) t *= x[v];
    s += t;
  }
  return s;
}

// S_1 and P_1 over Z_2 by inverting the first two ghost components by hand:
// w_0 = x_0, w_1 = x_0^2 + 2 x_1.
std::int64_t oracle_s1(std::int64_t x0, std::int64_t x1, std::int64_t y0, std::int64_t y1) {
  return (x0 * x0 + 2 * x1 + y0 * y0 + 2 * y1 - (x0 + y0) * (x0 + y0)) / 2;
}
std::int64_t oracle_p1(std::int64_t x0, std::int64_t x1, std::int64_t y0, std::int64_t y1) {
  return ((x0 * x0 + 2 * x1) * (y0 * y0 + 2 * y1) - (x0 * y0) * (x0 * y0)) / 2;
}

void classical_values(Outcome& out, const fs::path& dir) {
  const auto z2 = load_spec("Z2");
  std::string s1, p1;
  {
    FamilyCache writer(dir);
    auto sum = witt_family(z2, "sum", nlohmann::json::object(), 2, writer);
    auto prod = witt_family(z2, "prod", nlohmann::json::object(), 2, writer);
    if (writer.stats().computed != 2) out.fail("first pass did not solve both families");
  }
  FamilyCache reader(dir);
  auto sum = witt_family(z2, "sum", nlohmann::json::object(), 2, reader);
  auto prod = witt_family(z2, "prod", nlohmann::json::object(), 2, reader);
  if (reader.stats().disk_loads != 2 || reader.stats().computed != 0)
    out.fail("second pass did not load both families from disk");
  s1 = sum->polys.at(1).format();
  p1 = prod->polys.at(1).format();
  if (s1 != "X1 + Y1 - X0*Y0") out.fail("S_1 = " + s1);
  if (p1 != "2*X1*Y1 + X0^2*Y1 + X1*Y0^2") out.fail("P_1 = " + p1);
  // Variable order in the family is X0, X1, Y0, Y1.
  for (std::int64_t x0 = -3; x0 <= 3; ++x0)
    for (std::int64_t x1 = -3; x1 <= 3; ++x1)
      for (std::int64_t y0 = -3; y0 <= 3; ++y0)
        for (std::int64_t y1 = -3; y1 <= 3; ++y1) {
          const std::vector<std::int64_t> pt{x0, x1, y0, y1};
          if (eval_int(sum->polys.at(1), pt) != oracle_s1(x0, x1, y0, y1) ||
              eval_int(prod->polys.at(1), pt) != oracle_p1(x0, x1, y0, y1)) {
            std::ostringstream os;
            os << "mismatch with ghost inversion at (" << x0 << ", " << x1 << ", " << y0 << ", " << y1 << ")";
            out.fail(os.str());
            return;
          }
        }
}

struct Criterion {
  int id;
  std::string title;
  double limit_s;  // 0 means no runtime bound
  std::function<void(Outcome&, FamilyCache&, const fs::path&)> body;
};

VerifyOptions opts(std::vector<std::string> specs, std::vector<std::string> instances, int n) {
  VerifyOptions o;
  o.specs = std::move(specs);
  o.instances = std::move(instances);
  o.n = n;
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "ghost identities for Z2, Z3, Z2[pi], W(F4) at n <= 4", 10.0,
       [](Outcome& out, FamilyCache& c, const fs::path&) {
         run_into(out, "ghost", opts({"Z2", "Z3", "Z2[pi]", "W(F4)"}, {}, 4), c);
       }},
      {2, "classical S_1, P_1 over Z2 reproduced from the disk cache", 0,
       [](Outcome& out, FamilyCache&, const fs::path& dir) { classical_values(out, dir); }},
      {3, "F/V/Teichmuller identities on W_3(F4) and W_3(F2[x]/(x^2))", 5.0,
       [](Outcome& out, FamilyCache& c, const fs::path&) {
         run_into(out, "fv-identities", opts({"Z2", "Z2[pi]", "W(F4)"}, {"F4", "F2[x]/(x^2)"}, 3), c,
                  expect_checked("F V x = pi x", 64));
       }},
      {4, "gluing and digit expansion at n = 4 over F2[x]/(x^2)", 0,
       [](Outcome& out, FamilyCache& c, const fs::path&) {
         run_into(out, "glue", opts({"Z2", "Z2[pi]"}, {"F2[x]/(x^2)"}, 4), c,
                  expect_checked("x = sum V^i[x_i]", 256));
       }},
      {5, "pi_series bijection F4^2 <-> W_2(F4) with closed form", 0,
       [](Outcome& out, FamilyCache& c, const fs::path&) {
         run_into(out, "pi-series", opts({"Z2", "Z2[pi]", "W(F4)"}, {"F4"}, 2), c,
                  expect_checked("(b_j^(q^j))", 16));
       }},
      {6, "Drinfeld identities for unram-r2, ram-e2 and composite on F4, n <= 3", 30.0,
       [](Outcome& out, FamilyCache& c, const fs::path&) {
         auto o = opts({}, {"F4"}, 3);
         o.exts = {"unram-r2", "ram-e2", "composite"};
         run_into(out, "drinfeld-identities", o, c);
       }},
      {7, "unramified closed form on F4 and kernel on F4[x]/(x^2)", 0,
       [](Outcome& out, FamilyCache& c, const fs::path&) {
         auto o = opts({}, {"F4[x]/(x^2)"}, 0);
         o.exts = {"unram-r2"};
         run_into(out, "drinfeld-kernel-unram", o, c, expect_checked("ker u", 256));
       }},
      {8, "totally ramified kernel congruence, e = 2, p = 2, s <= 4", 60.0,
       [](Outcome& out, FamilyCache& c, const fs::path&) {
         VerifyOptions o;
         o.e = 2;
         o.s_max = 4;
         run_into(out, "drinfeld-kernel-ram", o, c, [](const VerifyReport& r, Outcome& out) {
           if (r.properties.size() != 5) out.fail("expected one property per s = 0..4");
         });
       }},
      {9, "u_B supported on even indices for pi = varpi^2, n = 4", 0,
       [](Outcome& out, FamilyCache& c, const fs::path&) {
         auto o = opts({}, {"F2", "F2[x]/(x^2)"}, 4);
         o.exts = {"ram-e2"};
         run_into(out, "u2-support", o, c);
       }},
      {10, "Greenberg comparison: W_2(F2) = O/pi^2, r bijective on F4, kernel loci", 0,
       [](Outcome& out, FamilyCache& c, const fs::path&) {
         auto g = opts({"Z2[pi]"}, {"F2"}, 0);
         g.m = 2;
         run_into(out, "greenberg-ring", g, c, expect_checked("O/pi^2 -> W_{O,2}(k) additive", 16));
         auto b = opts({"Z2[pi]", "W(F4)"}, {"F4"}, 0);
         b.m = 2;
         run_into(out, "r-bijectivity", b, c);
         run_into(out, "r-kernel", VerifyOptions{}, c);
       }},
      {11, "u_B and r_A injective on 10^4 sampled pairs over F2[x], n = 3", 0,
       [](Outcome& out, FamilyCache& c, const fs::path&) {
         auto o = opts({}, {}, 3);
         o.samples = 10000;
         o.seed = 1;
         run_into(out, "injectivity", o, c, expect_checked("injective", 10000));
       }},
  };

  int failed = 0;
  for (const auto& cr : criteria) {
    Outcome out;
    const auto dir = scratch_dir(cr.id);
    const auto t0 = std::chrono::steady_clock::now();
    try {
      FamilyCache cache(dir);
      cr.body(out, cache, dir);
    } catch (const std::exception& e) {
      out.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (cr.limit_s > 0 && secs >= cr.limit_s) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "runtime %.2f s exceeds %.0f s", secs, cr.limit_s);
      out.fail(buf);
    }
    std::error_code ec;
    fs::remove_all(dir, ec);
    char line[64];
    std::snprintf(line, sizeof line, "%s  criterion %2d  (%.2f s)  ", out.ok ? "PASS" : "FAIL", cr.id, secs);
    std::cout << line << cr.title;
    if (!out.ok) std::cout << "\n      " << out.detail;
    std::cout << std::endl;
    if (!out.ok) ++failed;
  }
  std::cout << (failed ? "FAIL" : "PASS") << "  " << (criteria.size() - failed) << "/" << criteria.size()
            << " criteria\n";
  return failed ? 1 : 0;
}
