#include <map>
#include <set>

#include "verify_detail.hpp"
#include "wittlab/greenberg.hpp"
#include "wittlab/util.hpp"

namespace wittlab::detail {
namespace {

using nlohmann::json;

template <class R>
std::vector<std::string> key_of(const R& ring, const std::vector<typename R::Elem>& coords) {
  std::vector<std::string> key;
  for (const auto& c : coords) key.push_back(ring.to_json(c).dump());
  return key;
}

std::vector<LocalElem> greenberg_scalars(const SpecPtr& spec) {
  const LocalElem pi = LocalElem::pi(spec, 8);
  std::vector<LocalElem> out = {LocalElem::from_int(spec, 3, 8), pi, LocalElem::from_int(spec, 1, 8) + pi};
  if (spec->h() > 1) out.push_back(LocalElem::omega(spec, 8) + pi);
  return out;
}

/// O/pi^2 -> W_{O,2}(k), lambda -> lambda * 1, with its table.
void truncated_o_table(Recorder& rec, const SpecPtr& spec, const std::string& tag, FamilyCache& cache) {
  const FiniteField k(spec->residue_field());
  WittRing W(spec, k, &cache);
  const int h = spec->h();
  const std::uint64_t p = spec->p();
  std::uint64_t total = 1;
  for (int i = 0; i < 2 * h; ++i) total *= p;
  std::vector<LocalElem> reps;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::vector<std::vector<std::int64_t>> blocks(2, std::vector<std::int64_t>(h));
    std::uint64_t t = idx;
    for (int j = 1; j >= 0; --j)
      for (int i = h - 1; i >= 0; --i) {
        blocks[j][i] = static_cast<std::int64_t>(t % p);
        t /= p;
      }
    reps.push_back(LocalElem::from_coords(spec, blocks, 8));
  }
  auto image = [&](const LocalElem& l) { return W.scalar(l, W.one(2)); };
  std::set<std::vector<FiniteFieldSpec::Code>> images;
  for (const auto& l : reps) {
    const auto w = image(l);
    images.insert(w.coords);
    rec.note(tag + ": " + l.format() + " -> " + W.format(w));
  }
  rec.check(tag + ": O/pi^2 -> W_{O,2}(k) bijective", images.size() == total,
            [&] { return json{{"images", images.size()}, {"expected", total}}; });
  for (const auto& a : reps)
    for (const auto& b : reps) {
      auto wit = [&] { return json{{"a", a.format()}, {"b", b.format()}}; };
      rec.check(tag + ": O/pi^2 -> W_{O,2}(k) additive", W.equal(image(a + b), W.add(image(a), image(b))), wit);
      rec.check(tag + ": O/pi^2 -> W_{O,2}(k) multiplicative", W.equal(image(a * b), W.mul(image(a), image(b))), wit);
    }
}

template <class G>
void greenberg_axioms(Recorder& rec, const G& R, const std::string& tag, const VerifyOptions& o) {
  const auto all = R.enumerate();
  const auto zero = R.zero(), one = R.one();
  for (const auto& x : all) {
    auto wit = [&] { return json{{"x", R.to_json(x)}}; };
    rec.check(tag + ": x + 0 = x", R.equal(R.add(x, zero), x), wit);
    rec.check(tag + ": 1 x = x", R.equal(R.mul(one, x), x), wit);
    rec.check(tag + ": x + (-x) = 0", R.is_zero(R.add(x, R.neg(x))), wit);
  }
  const std::size_t budget = o.samples > 0 ? o.samples : 100000;
  for_triples(all.size(), budget, o.seed, [&](std::size_t i, std::size_t j, std::size_t k) {
    const auto &x = all[i], &y = all[j], &z = all[k];
    auto wit = [&] { return json{{"x", R.to_json(x)}, {"y", R.to_json(y)}, {"z", R.to_json(z)}}; };
    const auto xy = R.mul(x, y);
    rec.check(tag + ": x + y = y + x", R.equal(R.add(x, y), R.add(y, x)), wit);
    rec.check(tag + ": x y = y x", R.equal(xy, R.mul(y, x)), wit);
    rec.check(tag + ": (x + y) + z = x + (y + z)", R.equal(R.add(R.add(x, y), z), R.add(x, R.add(y, z))), wit);
    rec.check(tag + ": (x y) z = x (y z)", R.equal(R.mul(xy, z), R.mul(x, R.mul(y, z))), wit);
    rec.check(tag + ": x (y + z) = x y + x z", R.equal(R.mul(x, R.add(y, z)), R.add(xy, R.mul(x, z))), wit);
  });
  // f_pi(T) = T^e + sum_l c_l T^l = 0.
  const auto& spec = R.spec();
  auto t_pow = R.one();
  auto acc = R.zero();
  for (int l = 0; l < spec->e(); ++l) {
    acc = R.add(acc, R.mul(R.from_local(LocalElem::from_coords(spec, {spec->eisenstein().at(l)}, 8)), t_pow));
    t_pow = R.mul(t_pow, R.generator());
  }
  acc = R.add(acc, t_pow);
  rec.check(tag + ": f_pi(T) = 0", R.is_zero(acc), [&] { return json{{"f_pi(T)", R.to_json(acc)}}; });
  rec.note(tag + ": |R_m(A)| = " + std::to_string(all.size()));
}

template <class G>
void bijectivity_on(Recorder& rec, const G& R, const std::string& tag, const VerifyOptions& o) {
  const auto& W = R.target();
  const auto& A = R.ring();
  const int m = R.m();
  const int n = matched_length(*R.spec(), m);
  const int need = R.required_m(n);
  rec.check(tag + ": r_0..r_(n-1) read only m coordinates", need <= m,
            [&] { return json{{"m", m}, {"n", n}, {"required_m", need}}; });
  if (need > m) return;
  const auto all = R.enumerate();
  std::vector<WittVector<typename G::E>> images;
  std::set<std::vector<std::string>> distinct;
  for (const auto& x : all) {
    images.push_back(R.r(x, n));
    distinct.insert(key_of(A, images.back().coords));
    rec.check(tag + ": r direct = u^ra o (u^un x id)", W.equal(images.back(), R.r_factorized(x, n)),
              [&] { return json{{"x", R.to_json(x)}}; });
  }
  std::uint64_t wn = 1;
  for (int i = 0; i < n; ++i) wn *= A.size();
  rec.check(tag + ": |R_m(A)| = |W_{O,n}(A)|", all.size() == wn,
            [&] { return json{{"R", all.size()}, {"W", wn}}; });
  rec.check(tag + ": r injective", distinct.size() == all.size(),
            [&] { return json{{"images", distinct.size()}, {"domain", all.size()}}; });
  rec.check(tag + ": r surjective", distinct.size() == wn, [&] { return json{{"images", distinct.size()}, {"W", wn}}; });
  rec.check(tag + ": r(1) = 1", W.equal(R.r(R.one(), n), W.one(n)), nullptr);
  rec.check(tag + ": r(T) = pi", W.equal(R.r(R.generator(), n), W.scalar(LocalElem::pi(R.spec(), 8), W.one(n))), nullptr);
  const auto lambdas = greenberg_scalars(R.spec());
  for (std::size_t i = 0; i < all.size(); ++i)
    for (const auto& lam : lambdas)
      rec.check(tag + ": r(l x) = l r(x)", W.equal(R.r(R.mul(R.from_local(lam), all[i]), n), W.scalar(lam, images[i])),
                [&] { return json{{"x", R.to_json(all[i])}, {"lambda", lam.format()}}; });
  const std::size_t budget = o.samples > 0 ? o.samples : 4000;
  for_pairs(all.size(), budget, o.seed, [&](std::size_t i, std::size_t j) {
    auto wit = [&] { return json{{"x", R.to_json(all[i])}, {"y", R.to_json(all[j])}}; };
    rec.check(tag + ": r(x + y) = r(x) + r(y)", W.equal(R.r(R.add(all[i], all[j]), n), W.add(images[i], images[j])), wit);
    rec.check(tag + ": r(x y) = r(x) r(y)", W.equal(R.r(R.mul(all[i], all[j]), n), W.mul(images[i], images[j])), wit);
  });
  rec.note(tag + ": m = " + std::to_string(m) + ", n = " + std::to_string(n) + ", |R_m(A)| = " +
           std::to_string(all.size()) + ", |W_n(A)| = " + std::to_string(wn) + ", |r(R_m(A))| = " +
           std::to_string(distinct.size()));
}

/// Compares ker r with the locus x_{j,i}^exponent(j, i) = 0 over coordinates s = je + i < n.
template <class G, class Exp>
void kernel_case(Recorder& rec, const G& R, int n, const std::string& tag, Exp&& exponent, const std::string& gens) {
  const auto& A = R.ring();
  const int e = R.e();
  std::uint64_t kernel = 0, total = 0;
  for (const auto& x : R.enumerate()) {
    bool locus = true;
    for (int s = 0; s < n; ++s) {
      const int j = s / e, i = s % e;
      if (j < R.m()) locus = locus && A.is_zero(A.pow(x[i][j], exponent(j, i)));
    }
    const bool in_kernel = R.target().is_zero(R.r(x, n));
    rec.check(tag + ": ker r = V(" + gens + ")", locus == in_kernel,
              [&] { return json{{"x", R.to_json(x)}, {"in_kernel", in_kernel}, {"in_locus", locus}}; });
    kernel += in_kernel;
    ++total;
  }
  rec.note(tag + ": |ker r| = " + std::to_string(kernel) + " of " + std::to_string(total));
}

QuotientAlgebra truncated_over(const FiniteFieldSpec& k, int power) {
  std::vector<std::int64_t> modulus(k.modulus().begin(), k.modulus().end());
  return QuotientAlgebra::parse(
      {{"p", k.p()}, {"modulus", modulus}, {"vars", {"x"}}, {"ideal", {"x^" + std::to_string(power)}}});
}

void kernel_composite(Recorder& rec, const VerifyOptions& o) {
  const std::string tag = "(c) W(F4)[pi] / F4[x]/(x^2)";
  const auto spec = named_spec("W(F4)[pi]");
  const auto A = truncated_over(*spec->residue_field(), 2);
  auto& cache = cache_of(o);
  GreenbergAlgebra R(spec, A, 1, &cache);
  DrinfeldMap un(unramified_part(spec), A, &cache);
  DrinfeldMap ra(ramified_part(spec), A, &cache);
  const int n = matched_length(*spec, 1);
  const int len = ra.required_ra_length(n);
  const int e = spec->e(), h = spec->h();
  const std::uint64_t p = spec->p(), q = spec->q();
  using Vec = WittVector<QuotientAlgebra::Elem>;

  std::uint64_t ker_r = 0, ker_un = 0;
  std::map<std::vector<std::string>, bool> image;  // y -> u^ra(y) = 0
  for (const auto& x : R.enumerate()) {
    std::vector<Vec> y;
    bool y_zero = true, locus_a = true;
    for (int i = 0; i < e; ++i) {
      y.push_back(un.apply(x[i], len));
      y_zero = y_zero && un.target().is_zero(y.back());
      for (int j = 0; j < std::min(len, R.m()); ++j)
        locus_a = locus_a && A.is_zero(A.pow(x[i][j], checked_pow(p, static_cast<std::uint64_t>(j) * (h - 1))));
    }
    const auto z = ra.apply_ra(y, n);
    const auto direct = R.r(x, n);
    auto wit = [&] { return json{{"x", R.to_json(x)}}; };
    rec.check(tag + ": r = u^ra o (u^un x id)", R.target().equal(direct, z), wit);
    rec.check(tag + ": ker(prod u^un) = product of case (a) loci", y_zero == locus_a, wit);
    ker_r += R.target().is_zero(direct);
    ker_un += y_zero;
    std::vector<std::string> key;
    for (const auto& v : y) {
      const auto k = key_of(A, v.coords);
      key.insert(key.end(), k.begin(), k.end());
    }
    image[key] = ra.target().is_zero(z);
    bool locus_b = true;
    for (int s = 0; s < n; ++s) {
      const int j = s / e, i = s % e;
      if (j < len) locus_b = locus_b && A.is_zero(A.pow(y[i][j], checked_pow(q, static_cast<std::uint64_t>(j) * (e - 1) + i)));
    }
    rec.check(tag + ": ker u^ra on the image = case (b) locus", locus_b == image[key], wit);
  }
  std::uint64_t ker_ra = 0;
  for (const auto& [k, zero] : image) ker_ra += zero;
  rec.check(tag + ": |ker r| = |ker(prod u^un)| |ker u^ra on the image|", ker_r == ker_un * ker_ra,
            [&] { return json{{"ker_r", ker_r}, {"ker_un", ker_un}, {"ker_ra", ker_ra}}; });
  rec.note(tag + ": |ker r| = " + std::to_string(ker_r) + " = " + std::to_string(ker_un) + " * " +
           std::to_string(ker_ra));
}

}  // namespace

void suite_greenberg_ring(Recorder& rec, const VerifyOptions& o) {
  const auto specs = or_default(o.specs, {"Z2[pi]"});
  const auto instances = or_default(o.instances, {"F2", "F2[x]/(x^2)"});
  const int m = or_default(o.m, 2);
  rec.param("specs", specs);
  rec.param("instances", instances);
  rec.param("m", m);
  rec.param("seed", o.seed);
  auto& cache = cache_of(o);
  for (const auto& s : specs) {
    const auto spec = load_spec(s);
    truncated_o_table(rec, spec, label(s), cache);
    for (const auto& i : instances)
      with_finite(parse_instance(i), [&](const auto& A) {
        const std::string tag = label(s) + " / " + label(i) + ", m = " + std::to_string(m);
        if (!is_k_algebra(*spec, A)) {
          rec.note(tag + ": skipped, not an algebra over the residue field");
          return;
        }
        GreenbergAlgebra R(spec, A, m, &cache);
        greenberg_axioms(rec, R, tag, o);
      });
  }
}

void suite_r_bijectivity(Recorder& rec, const VerifyOptions& o) {
  const auto specs = or_default(o.specs, {"Z2[pi]", "W(F4)", "W(F4)[pi]"});
  const auto instances = or_default(o.instances, {"F4"});
  const int m = or_default(o.m, 2);
  rec.param("specs", specs);
  rec.param("A", instances);
  rec.param("m", m);
  rec.param("pairing", "n = m * e");
  rec.param("seed", o.seed);
  for (const auto& s : specs) {
    const auto spec = load_spec(s);
    for (const auto& i : instances)
      with_finite(parse_instance(i), [&](const auto& A) {
        const std::string tag = label(s) + " / " + label(i);
        if (!is_k_algebra(*spec, A)) {
          rec.note(tag + ": skipped, not an algebra over the residue field");
          return;
        }
        GreenbergAlgebra R(spec, A, m, &cache_of(o));
        bijectivity_on(rec, R, tag, o);
      });
  }
}

void suite_r_kernel(Recorder& rec, const VerifyOptions& o) {
  rec.param("cases", {"(a) W(F4), A = F4[x]/(x^4), m = n = 2", "(b) Z2[pi], A = F2[x]/(x^4), m = 2, n = 3, 4",
                      "(c) W(F4)[pi], A = F4[x]/(x^2), m = 1, n = 2"});
  auto& cache = cache_of(o);
  {
    const auto spec = named_spec("W(F4)");
    GreenbergAlgebra R(spec, truncated_over(*spec->residue_field(), 4), 2, &cache);
    const std::uint64_t p = spec->p();
    const int h = spec->h();
    kernel_case(rec, R, 2, "(a) W(F4) / F4[x]/(x^4), n = 2",
                [&](int j, int) { return checked_pow(p, static_cast<std::uint64_t>(j) * (h - 1)); },
                "X_j^(p^(j(h-1)))");
  }
  {
    const auto spec = named_spec("Z2[pi]");
    GreenbergAlgebra R(spec, truncated_over(*spec->residue_field(), 4), 2, &cache);
    const std::uint64_t p = spec->p();
    const int e = spec->e();
    for (int n : {3, 4})
      kernel_case(rec, R, n, "(b) Z2[pi] / F2[x]/(x^4), n = " + std::to_string(n),
                  [&](int j, int i) { return checked_pow(p, static_cast<std::uint64_t>(j) * (e - 1) + i); },
                  "X_{j,i}^(p^(j(e-1)+i))");
  }
  kernel_composite(rec, o);
}

void suite_injectivity(Recorder& rec, const VerifyOptions& o) {
  const auto inst = parse_instance(o.instances.empty() ? std::string("F2[x]") : o.instances.front());
  const auto* A = std::get_if<BoundedPoly>(&inst);
  if (!A) throw InputError("injectivity samples from a polynomial instance such as F2[x]");
  const std::string ext_arg = o.exts.empty() ? "ram-e2" : o.exts.front();
  const std::string spec_arg = o.specs.empty() ? "Z2[pi]" : o.specs.front();
  const int n = or_default(o.n, 3);
  const int samples = or_default(o.samples, 10000);
  const int degree = 3;
  rec.param("instance", A->describe());
  rec.param("ext", ext_arg);
  rec.param("spec", spec_arg);
  rec.param("n", n);
  rec.param("samples", samples);
  rec.param("max_degree", degree);
  rec.param("seed", o.seed);
  auto& cache = cache_of(o);
  using Vec = WittVector<BoundedPoly::Elem>;
  std::mt19937_64 rng(o.seed);

  const auto ext = load_ext(ext_arg);
  if (!is_k_algebra(*ext->top(), *A)) throw InputError("instance is not an algebra over the top residue field");
  DrinfeldMap u(ext, *A, &cache);
  const int L = u.required_length(n);
  auto random_vec = [&](int len) {
    Vec v = u.source().zero(len);
    for (auto& c : v.coords) c = A->random(rng, degree);
    return v;
  };
  int collisions = 0;
  for (int t = 0; t < samples;) {
    const auto x = random_vec(L), y = random_vec(L);
    if (u.source().equal(x, y)) continue;
    ++t;
    const bool same = u.target().equal(u.apply(x, n), u.apply(y, n));
    collisions += same;
    rec.check(label(ext_arg) + ": u_B injective, n = " + std::to_string(n), !same,
              [&] { return json{{"x", u.source().to_json(x)}, {"y", u.source().to_json(y)}}; });
  }
  rec.note(label(ext_arg) + ": input length " + std::to_string(L) + ", " + std::to_string(samples) +
           " distinct pairs, " + std::to_string(collisions) + " collisions");

  const auto spec = load_spec(spec_arg);
  if (!is_k_algebra(*spec, *A)) throw InputError("instance is not an algebra over the residue field");
  const int m = GreenbergAlgebra(spec, *A, 1, &cache).required_m(n);
  GreenbergAlgebra R(spec, *A, m, &cache);
  std::vector<int> lengths;
  for (int i = 0; i < R.e(); ++i) lengths.push_back(R.component_length(i, n));
  auto random_elem = [&] {
    auto x = R.zero();
    for (int i = 0; i < R.e(); ++i)
      for (int j = 0; j < lengths[i]; ++j) x[i][j] = A->random(rng, degree);
    return x;
  };
  collisions = 0;
  for (int t = 0; t < samples;) {
    const auto x = random_elem(), y = random_elem();
    if (R.equal(x, y)) continue;
    ++t;
    const bool same = R.target().equal(R.r(x, n), R.r(y, n));
    collisions += same;
    rec.check(label(spec_arg) + ": r_A injective, n = " + std::to_string(n), !same,
              [&] { return json{{"x", R.to_json(x)}, {"y", R.to_json(y)}}; });
  }
  std::string lens;
  for (int l : lengths) lens += (lens.empty() ? "" : ", ") + std::to_string(l);
  rec.note(label(spec_arg) + ": m = " + std::to_string(m) + ", coordinates read per component (" + lens + "), " +
           std::to_string(samples) + " distinct pairs, " + std::to_string(collisions) + " collisions");
}

}  // namespace wittlab::detail
