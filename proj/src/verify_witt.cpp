#include <set>

#include "verify_detail.hpp"
#include "wittlab/witt.hpp"

namespace wittlab::detail {
namespace {

using nlohmann::json;

std::vector<LocalElem> sample_scalars(const SpecPtr& spec) {
  const LocalElem pi = LocalElem::pi(spec, 8);
  return {LocalElem::from_int(spec, 3, 8), pi, LocalElem::from_int(spec, 1, 8) + pi};
}

/// Runs f(spec, ring, tag) over every compatible (spec, instance) combination.
template <class F>
void over_combos(Recorder& rec, const std::vector<std::string>& specs, const std::vector<std::string>& instances, F&& f) {
  for (const auto& s : specs) {
    const auto spec = load_spec(s);
    for (const auto& i : instances)
      with_finite(parse_instance(i), [&](const auto& ring) {
        const std::string tag = label(s) + " / " + label(i);
        if (!is_k_algebra(*spec, ring)) {
          rec.note(tag + ": skipped, " + ring.describe() + " is not an algebra over the residue field");
          return;
        }
        f(spec, ring, tag);
      });
  }
}

template <class R>
void ring_axioms_on(Recorder& rec, const WittRing<R>& W, int n, const std::string& tag, const VerifyOptions& o) {
  const auto all = W.enumerate(n);
  const auto zero = W.zero(n), one = W.one(n);
  for (const auto& x : all) {
    auto wit = [&] { return json{{"x", W.to_json(x)}}; };
    rec.check(tag + ": x + 0 = x", W.equal(W.add(x, zero), x), wit);
    rec.check(tag + ": 1 x = x", W.equal(W.mul(one, x), x), wit);
    rec.check(tag + ": x + (-x) = 0", W.is_zero(W.add(x, W.neg(x))), wit);
  }
  const std::size_t budget = o.samples > 0 ? o.samples : 100000;
  for_triples(all.size(), budget, o.seed, [&](std::size_t i, std::size_t j, std::size_t k) {
    const auto &x = all[i], &y = all[j], &z = all[k];
    auto wit = [&] { return json{{"x", W.to_json(x)}, {"y", W.to_json(y)}, {"z", W.to_json(z)}}; };
    const auto xy = W.mul(x, y);
    rec.check(tag + ": x + y = y + x", W.equal(W.add(x, y), W.add(y, x)), wit);
    rec.check(tag + ": x y = y x", W.equal(xy, W.mul(y, x)), wit);
    rec.check(tag + ": (x + y) + z = x + (y + z)", W.equal(W.add(W.add(x, y), z), W.add(x, W.add(y, z))), wit);
    rec.check(tag + ": (x y) z = x (y z)", W.equal(W.mul(xy, z), W.mul(x, W.mul(y, z))), wit);
    rec.check(tag + ": x (y + z) = x y + x z", W.equal(W.mul(x, W.add(y, z)), W.add(xy, W.mul(x, z))), wit);
  });
  rec.note(tag + ": |W_" + std::to_string(n) + "| = " + std::to_string(all.size()));
}

template <class R>
void fv_on(Recorder& rec, const WittRing<R>& W, int n, const std::string& tag) {
  const auto& B = W.ring();
  const std::uint64_t q = W.spec()->q();
  const LocalElem pi = LocalElem::pi(W.spec(), 8);
  const auto lambdas = sample_scalars(W.spec());
  const auto all = W.enumerate(n);
  const auto shorter = W.enumerate(n - 1);
  for (const auto& x : all) {
    auto wit = [&] { return json{{"x", W.to_json(x)}}; };
    const auto pix = W.scalar(pi, x);
    const auto fx = W.frobenius(x);
    rec.check(tag + ": F V x = pi x", W.equal(W.frobenius(W.verschiebung(x)), pix), wit);
    rec.check(tag + ": V F x = pi x", W.equal(W.verschiebung(fx), pix), wit);
    bool coordwise = true;
    for (int i = 0; i + 1 < n; ++i) coordwise = coordwise && B.equal(fx[i], B.pow(x[i], q));
    rec.check(tag + ": F x = (x_i^q)", coordwise, wit);
    for (const auto& lam : lambdas) {
      rec.check(tag + ": F(l x) = l F(x)", W.equal(W.frobenius(W.scalar(lam, x)), W.scalar(lam, fx)),
                [&] { return json{{"x", W.to_json(x)}, {"lambda", lam.format()}}; });
    }
    for (const auto& c : shorter)
      rec.check(tag + ": x V(c) = V(F(x) c)", W.equal(W.mul(x, W.verschiebung(c)), W.verschiebung(W.mul(fx, c))),
                [&] { return json{{"x", W.to_json(x)}, {"c", W.to_json(c)}}; });
  }
  for (const auto& c : shorter)
    for (const auto& lam : lambdas)
      rec.check(tag + ": V(l c) = l V(c)", W.equal(W.verschiebung(W.scalar(lam, c)), W.scalar(lam, W.verschiebung(c))),
                [&] { return json{{"c", W.to_json(c)}, {"lambda", lam.format()}}; });
  for (std::uint64_t a = 0; a < B.size(); ++a) {
    const auto ea = B.element(a);
    rec.check(tag + ": Phi_0[b] = b", B.equal(W.ghost(W.teichmuller(ea, n))[0], ea),
              [&] { return json{{"b", B.to_json(ea)}}; });
    for (std::uint64_t b = 0; b < B.size(); ++b) {
      const auto eb = B.element(b);
      rec.check(tag + ": [a][b] = [ab]",
                W.equal(W.mul(W.teichmuller(ea, n), W.teichmuller(eb, n)), W.teichmuller(B.mul(ea, eb), n)),
                [&] { return json{{"a", B.to_json(ea)}, {"b", B.to_json(eb)}}; });
    }
  }
}

template <class R>
void glue_on(Recorder& rec, const WittRing<R>& W, int n, const std::string& tag) {
  const auto& B = W.ring();
  for (const auto& x : W.enumerate(n)) {
    auto wit = [&] { return json{{"x", W.to_json(x)}}; };
    auto sum = W.zero(n);
    std::vector<WittVector<typename R::Elem>> parts;
    for (int i = 0; i < n; ++i) {
      auto v = W.teichmuller(x[i], n - i);
      for (int k = 0; k < i; ++k) v = W.verschiebung(v);
      sum = W.add(sum, v);
      parts.push_back(std::move(v));
    }
    rec.check(tag + ": x = sum V^i[x_i]", W.equal(sum, x), wit);
    rec.check(tag + ": glue(V^i[x_i]) = x", W.equal(W.glue(parts), x), wit);
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      auto b = W.zero(n), c = W.zero(n);
      for (int i = 0; i < n; ++i) ((mask >> i) & 1 ? b : c)[i] = x[i];
      rec.check(tag + ": x|I + x|J = x", W.equal(W.add(b, c), x),
                [&] { return json{{"x", W.to_json(x)}, {"I", mask}}; });
    }
  }
  bool rejected = false;
  try {
    W.glue({W.teichmuller(B.one(), n), W.teichmuller(B.one(), n)});
  } catch (const InputError&) {
    rejected = true;
  }
  rec.check(tag + ": overlapping supports rejected", rejected, nullptr);
}

template <class R>
void pi_series_on(Recorder& rec, const WittRing<R>& W, int n, const std::string& tag) {
  const auto& B = W.ring();
  const std::uint64_t q = W.spec()->q();
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) total *= B.size();
  std::set<std::vector<std::string>> images;
  const bool show = total <= 64;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::vector<typename R::Elem> digits;
    std::uint64_t t = idx;
    for (int i = 0; i < n; ++i) {
      digits.insert(digits.begin(), B.element(t % B.size()));
      t /= B.size();
    }
    const auto x = W.pi_series(digits);
    json dj = json::array();
    for (const auto& d : digits) dj.push_back(B.to_json(d));
    auto wit = [&] { return json{{"digits", dj}, {"x", W.to_json(x)}}; };
    bool closed = true;
    std::uint64_t qj = 1;
    for (int j = 0; j < n; ++j) {
      closed = closed && B.equal(x[j], B.pow(digits[j], qj));
      qj *= q;
    }
    rec.check(tag + ": sum pi^j [b_j] = (b_j^(q^j))", closed, wit);
    std::vector<std::string> key;
    for (const auto& c : x.coords) key.push_back(B.to_json(c).dump());
    images.insert(key);
    if constexpr (std::is_same_v<R, FiniteField>) {
      const auto back = W.pi_series_inverse(x);
      bool same = true;
      for (int j = 0; j < n; ++j) same = same && B.equal(back[j], digits[j]);
      rec.check(tag + ": inverse recovers digits", same, wit);
    }
    if (show) {
      std::string row = tag + ": (";
      for (int j = 0; j < n; ++j) row += (j ? ", " : "") + B.format(digits[j]);
      rec.note(row + ") -> " + W.format(x));
    }
  }
  if constexpr (std::is_same_v<R, FiniteField>)
    rec.check(tag + ": bijective", images.size() == total,
              [&] { return json{{"images", images.size()}, {"expected", total}}; });
  rec.note(tag + ": " + std::to_string(images.size()) + " distinct images of " + std::to_string(total) + " digit vectors");
}

}  // namespace

void suite_ghost(Recorder& rec, const VerifyOptions& o) {
  const auto specs = or_default(o.specs, {"Z2", "Z3", "Z2[pi]", "W(F4)"});
  const int n = or_default(o.n, 4);
  const std::vector<std::string> kinds = {"sum", "prod", "neg", "frobenius"};
  rec.param("specs", specs);
  rec.param("n", n);
  rec.param("kinds", kinds);
  auto& cache = cache_of(o);
  for (const auto& s : specs) {
    const auto spec = load_spec(s);
    for (const auto& kind : kinds) {
      const auto fam = witt_family(spec, kind, json::object(), n, cache);
      const auto pb = witt_problem(kind, spec, json::object(), fam->n);
      std::string where;
      const bool ok = ghost_identity_holds(pb, *fam, &where);
      rec.check(label(s) + ": Phi(" + kind + ") = target", ok,
                [&] { return json{{"spec", s}, {"kind", kind}, {"n", fam->n}, {"failure", where}}; });
      std::size_t terms = 0;
      for (int m = 0; m < n; ++m) terms += fam->polys[m].size();
      rec.note(label(s) + " " + kind + ": n = " + std::to_string(n) + ", solver precision " +
               std::to_string(fam->solver_precision) + ", " + std::to_string(terms) + " terms");
    }
    if (spec->same_ring(*named_spec("Z2")) && n >= 2) {
      const auto sum = witt_family(spec, "sum", json::object(), n, cache);
      const auto prod = witt_family(spec, "prod", json::object(), n, cache);
      const std::string s1 = sum->polys[1].format(), p1 = prod->polys[1].format();
      rec.check("Z2: S_1 = X1 + Y1 - X0*Y0", s1 == "X1 + Y1 - X0*Y0", [&] { return json{{"S_1", s1}}; });
      rec.check("Z2: P_1 = X0^2*Y1 + X1*Y0^2 + 2*X1*Y1", p1 == "2*X1*Y1 + X0^2*Y1 + X1*Y0^2",
                [&] { return json{{"P_1", p1}}; });
      rec.note("Z2: S_1 = " + s1);
      rec.note("Z2: P_1 = " + p1);
    }
  }
}

void suite_ring_axioms(Recorder& rec, const VerifyOptions& o) {
  const auto specs = or_default(o.specs, {"Z2", "Z2[pi]", "W(F4)"});
  const auto instances = or_default(o.instances, {"F4", "F2[x]/(x^2)"});
  const int n = or_default(o.n, 2);
  rec.param("specs", specs);
  rec.param("instances", instances);
  rec.param("n", n);
  rec.param("seed", o.seed);
  over_combos(rec, specs, instances, [&](const SpecPtr& spec, const auto& ring, const std::string& tag) {
    WittRing W(spec, ring, &cache_of(o));
    ring_axioms_on(rec, W, n, tag, o);
  });
}

void suite_fv_identities(Recorder& rec, const VerifyOptions& o) {
  const auto specs = or_default(o.specs, {"Z2", "Z2[pi]", "W(F4)"});
  const auto instances = or_default(o.instances, {"F4", "F2[x]/(x^2)"});
  const int n = or_default(o.n, 3);
  if (n < 2) throw InputError("fv-identities needs n >= 2");
  rec.param("specs", specs);
  rec.param("instances", instances);
  rec.param("n", n);
  over_combos(rec, specs, instances, [&](const SpecPtr& spec, const auto& ring, const std::string& tag) {
    WittRing W(spec, ring, &cache_of(o));
    fv_on(rec, W, n, tag);
  });
}

void suite_glue(Recorder& rec, const VerifyOptions& o) {
  const auto specs = or_default(o.specs, {"Z2", "Z2[pi]"});
  const auto instances = or_default(o.instances, {"F2[x]/(x^2)"});
  const int n = or_default(o.n, 4);
  if (n > 16) throw InputError("glue: n must be at most 16");
  rec.param("specs", specs);
  rec.param("instances", instances);
  rec.param("n", n);
  over_combos(rec, specs, instances, [&](const SpecPtr& spec, const auto& ring, const std::string& tag) {
    WittRing W(spec, ring, &cache_of(o));
    glue_on(rec, W, n, tag);
  });
}

void suite_pi_series(Recorder& rec, const VerifyOptions& o) {
  const auto specs = or_default(o.specs, {"Z2", "Z2[pi]", "W(F4)"});
  const auto instances = or_default(o.instances, {"F4"});
  const int n = or_default(o.n, 2);
  rec.param("specs", specs);
  rec.param("instances", instances);
  rec.param("n", n);
  over_combos(rec, specs, instances, [&](const SpecPtr& spec, const auto& ring, const std::string& tag) {
    WittRing W(spec, ring, &cache_of(o));
    pi_series_on(rec, W, n, tag);
  });
}

}  // namespace wittlab::detail
