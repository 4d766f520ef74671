#include <algorithm>
#include <set>

#include "verify_detail.hpp"
#include "wittlab/drinfeld.hpp"
#include "wittlab/util.hpp"

namespace wittlab::detail {
namespace {

using nlohmann::json;

/// Runs f(ext, ring, tag) over every (extension, instance) pair where the
/// instance is an algebra over the top residue field.
template <class F>
void over_ext_combos(Recorder& rec, const std::vector<std::string>& exts, const std::vector<std::string>& instances,
                     F&& f) {
  for (const auto& e : exts) {
    const auto ext = load_ext(e);
    for (const auto& i : instances)
      with_finite(parse_instance(i), [&](const auto& ring) {
        const std::string tag = label(e) + " / " + label(i);
        if (!is_k_algebra(*ext->top(), ring)) {
          rec.note(tag + ": skipped, " + ring.describe() + " is not an algebra over the top residue field");
          return;
        }
        f(ext, ring, tag);
      });
  }
}

template <class R>
auto frob_power(const WittRing<R>& W, WittVector<typename R::Elem> x, int k) {
  for (int i = 0; i < k; ++i) x = W.frobenius(x);
  return x;
}

template <class R>
void identities_on(Recorder& rec, const DrinfeldMap<R>& u, int N, const std::string& tag, const VerifyOptions& o) {
  const auto& W = u.source();
  const auto& W2 = u.target();
  const auto& B = W.ring();
  const auto& ext = u.ext();
  const int r = ext.r();
  const auto base = ext.base();
  const std::vector<LocalElem> lambdas = {LocalElem::from_int(base, 3, 8), LocalElem::pi(base, 8),
                                          LocalElem::from_int(base, -5, 8),
                                          LocalElem::from_int(base, 1, 8) + LocalElem::pi(base, 8)};
  const LocalElem pi_over_varpi = exact_div_by_pi_power(ext.pi_image(12), 1);
  const std::size_t budget = o.samples > 0 ? o.samples : 4000;

  for (int n = 1; n <= N; ++n) {
    const std::string at = tag + ", n = " + std::to_string(n) + ": ";
    const int L = u.required_length(n);
    const auto all = W.enumerate(L);
    for (std::uint64_t b = 0; b < B.size(); ++b) {
      const auto eb = B.element(b);
      rec.check(at + "u[b] = [b]", W2.equal(u.apply(W.teichmuller(eb, L), n), W2.teichmuller(eb, n)),
                [&] { return json{{"b", B.to_json(eb)}}; });
    }
    std::vector<WittVector<typename R::Elem>> images;
    images.reserve(all.size());
    for (const auto& x : all) {
      images.push_back(u.apply(x, n));
      for (const auto& lam : lambdas)
        rec.check(at + "u(l x) = l u(x)", W2.equal(u.apply(W.scalar(lam, x), n), W2.scalar(ext.embed(lam), images.back())),
                  [&] { return json{{"x", W.to_json(x)}, {"lambda", lam.format()}}; });
    }
    for_pairs(all.size(), budget, o.seed + n, [&](std::size_t i, std::size_t j) {
      auto wit = [&] { return json{{"x", W.to_json(all[i])}, {"y", W.to_json(all[j])}}; };
      rec.check(at + "u(x + y) = u(x) + u(y)", W2.equal(u.apply(W.add(all[i], all[j]), n), W2.add(images[i], images[j])),
                wit);
      rec.check(at + "u(x y) = u(x) u(y)", W2.equal(u.apply(W.mul(all[i], all[j]), n), W2.mul(images[i], images[j])),
                wit);
    });
    rec.note(at + "input length " + std::to_string(L) + ", " + std::to_string(all.size()) + " inputs");

    if (n < N) {
      const int Lx = std::max(u.required_length(n + 1), u.required_length(n) + r);
      for (const auto& x : W.enumerate(Lx))
        rec.check(at + "u(F^r x) = F'(u(x))", W2.equal(u.apply(frob_power(W, x, r), n), W2.frobenius(u.apply(x, n + 1))),
                  [&] { return json{{"x", W.to_json(x)}}; });
    }
    if (n >= 2) {
      const int Lx = std::max(u.required_length(n) - 1, u.required_length(n - 1) + r - 1);
      for (const auto& x : W.enumerate(Lx)) {
        const auto lhs = u.apply(W.verschiebung(x), n);
        const auto rhs = W2.scalar(pi_over_varpi, W2.verschiebung(u.apply(frob_power(W, x, r - 1), n - 1)));
        rec.check(at + "u(V x) = (pi/varpi) V'(u(F^(r-1) x))", W2.equal(lhs, rhs),
                  [&] { return json{{"x", W.to_json(x)}}; });
      }
    }
  }
}

template <class R>
void tower_on(Recorder& rec, const R& ring, int N, const std::string& tag, FamilyCache& cache) {
  const auto lower_ext = named_ext("unram-r2");
  const auto upper_ext = named_ext("tower-upper");
  const auto direct = named_ext("composite");
  for (int n = 1; n <= std::min(N, 2); ++n) {
    const auto fam = drinfeld_family(*direct, n, false, cache);
    const auto comp = composed_u_polys(*lower_ext, *upper_ext, n, fam->vars, cache);
    for (int m = 0; m < n; ++m)
      rec.check("tower: u_(Z2,W(F4)[pi]) = u_upper o u_lower (symbolic)", comp[m] == fam->polys[m],
                [&] { return json{{"n", n}, {"m", m}, {"difference", (comp[m] - fam->polys[m]).format()}}; });
  }
  DrinfeldMap lower(lower_ext, ring, &cache);
  DrinfeldMap upper(upper_ext, ring, &cache);
  DrinfeldMap whole(direct, ring, &cache);
  const int mid = upper.required_length(N);
  const int L = std::max(whole.required_length(N), lower.required_length(mid));
  for (const auto& x : lower.source().enumerate(L))
    rec.check("tower / " + tag + ": u(x) = u_upper(u_lower(x)), n = " + std::to_string(N),
              whole.target().equal(whole.apply(x, N), upper.apply(lower.apply(x, mid), N)),
              [&] { return json{{"x", lower.source().to_json(x)}}; });
}

ExtPtr ramified_of_degree(int e) {
  if (e < 1) throw InputError("e must be positive");
  if (e == 2) return named_ext("ram-e2");
  std::vector<std::vector<std::int64_t>> eis(e + 1, std::vector<std::int64_t>{0});
  eis[0] = {-2};
  eis[e] = {1};
  auto top = LocalFieldSpec::create(2, 1, e, {0, 1}, eis, 16);
  return ExtensionSpec::create(named_spec("Z2"), top, 2, nullptr);
}

}  // namespace

void suite_drinfeld_identities(Recorder& rec, const VerifyOptions& o) {
  const auto exts = or_default(o.exts, {"unram-r2", "ram-e2", "composite"});
  const auto instances = or_default(o.instances, {"F4"});
  const int n = or_default(o.n, 3);
  rec.param("exts", exts);
  rec.param("instances", instances);
  rec.param("n", n);
  rec.param("seed", o.seed);
  auto& cache = cache_of(o);
  over_ext_combos(rec, exts, instances, [&](const ExtPtr& ext, const auto& ring, const std::string& tag) {
    DrinfeldMap u(ext, ring, &cache);
    identities_on(rec, u, n, tag, o);
  });
  if (std::find(exts.begin(), exts.end(), "composite") != exts.end())
    for (const auto& i : instances)
      with_finite(parse_instance(i), [&](const auto& ring) {
        if (is_k_algebra(*named_spec("W(F4)[pi]"), ring)) tower_on(rec, ring, n, label(i), cache);
      });
}

void suite_drinfeld_kernel_unram(Recorder& rec, const VerifyOptions& o) {
  const std::string ext_arg = o.exts.empty() ? "unram-r2" : o.exts.front();
  const auto ext = load_ext(ext_arg);
  if (ext->e() != 1) throw InputError("drinfeld-kernel-unram needs an unramified extension");
  const auto instances = or_default(o.instances, {"F4[x]/(x^2)"});
  const int n_closed = or_default(o.n, 3);
  const int n_kernel = or_default(o.n, 2);
  rec.param("ext", ext_arg);
  rec.param("instances", instances);
  rec.param("n_closed_form", n_closed);
  rec.param("n_kernel", n_kernel);
  auto& cache = cache_of(o);
  const std::uint64_t q = ext->q();
  const int r = ext->r();
  auto exponent = [&](int m) { return checked_pow(q, static_cast<std::uint64_t>(m) * (r - 1)); };

  {
    const FiniteField k(ext->top()->residue_field());
    DrinfeldMap u(ext, k, &cache);
    const int L = u.required_length(n_closed);
    const std::string tag = label(ext_arg) + " / " + k.describe();
    std::set<std::vector<FiniteFieldSpec::Code>> images;
    for (const auto& x : u.source().enumerate(L)) {
      const auto y = u.apply(x, n_closed);
      bool closed = true;
      for (int m = 0; m < n_closed; ++m) closed = closed && y[m] == k.pow(x[m], exponent(m));
      rec.check(tag + ": u(b)_m = b_m^(q^(m(r-1)))", closed,
                [&] { return json{{"x", u.source().to_json(x)}, {"u(x)", u.target().to_json(y)}}; });
      images.insert(y.coords);
    }
    std::uint64_t total = 1;
    for (int i = 0; i < L; ++i) total *= k.size();
    rec.check(tag + ": u bijective on the residue field", L == n_closed && images.size() == total,
              [&] { return json{{"input_length", L}, {"images", images.size()}, {"inputs", total}}; });
  }

  std::string gens = "X0";
  for (int m = 1; m < n_kernel; ++m) gens += ", X" + std::to_string(m) + "^" + std::to_string(exponent(m));
  rec.note("kernel generators at n = " + std::to_string(n_kernel) + ": " + gens);
  for (const auto& i : instances)
    with_finite(parse_instance(i), [&](const auto& B) {
      const std::string tag = label(ext_arg) + " / " + label(i);
      if (!is_k_algebra(*ext->top(), B)) {
        rec.note(tag + ": skipped, not an algebra over the top residue field");
        return;
      }
      DrinfeldMap u(ext, B, &cache);
      const int L = u.required_length(n_kernel);
      std::uint64_t kernel = 0, total = 0;
      for (const auto& x : u.source().enumerate(L)) {
        bool locus = true;
        for (int m = 0; m < n_kernel && m < L; ++m) locus = locus && B.is_zero(B.pow(x[m], exponent(m)));
        const bool in_kernel = u.target().is_zero(u.apply(x, n_kernel));
        rec.check(tag + ": ker u = V(" + gens + ")", locus == in_kernel,
                  [&] { return json{{"x", u.source().to_json(x)}, {"in_kernel", in_kernel}, {"in_locus", locus}}; });
        kernel += in_kernel;
        ++total;
      }
      rec.note(tag + ": |ker u| = " + std::to_string(kernel) + " of " + std::to_string(total) + " vectors of length " +
               std::to_string(L));
    });
}

void suite_drinfeld_kernel_ram(Recorder& rec, const VerifyOptions& o) {
  const ExtPtr ext = o.exts.empty() ? ramified_of_degree(o.e) : load_ext(o.exts.front());
  const int s_max = o.s_max;
  rec.param("ext", o.exts.empty() ? json("Z2 -> Z2[pi]/(pi^" + std::to_string(ext->e()) + " - 2)") : json(o.exts.front()));
  rec.param("e", ext->e());
  rec.param("s_max", s_max);
  const auto rows = ra_kernel_congruence(*ext, s_max, cache_of(o));
  for (const auto& row : rows) {
    rec.check("s = " + std::to_string(row.s) + ": u^ra_s = alpha^" + std::to_string(row.n) + " X" +
                  std::to_string(row.n) + "_" + std::to_string(row.i) + "^" + std::to_string(row.exponent) +
                  " mod (varpi, J_" + std::to_string(row.s - 1) + ")",
              row.ok, [&] { return json{{"s", row.s}, {"residue", row.residue}, {"expected", row.expected}}; });
    rec.note("s = " + std::to_string(row.s) + " (n = " + std::to_string(row.n) + ", i = " + std::to_string(row.i) +
             "): residue " + row.residue + ", expected " + row.expected);
  }
}

void suite_u2_support(Recorder& rec, const VerifyOptions& o) {
  const std::string ext_arg = o.exts.empty() ? "ram-e2" : o.exts.front();
  const auto ext = load_ext(ext_arg);
  const int e = ext->e();
  const int P = ext->top()->default_precision();
  if (!(ext->pi_image(P) == pow(LocalElem::pi(ext->top(), P), e)))
    throw InputError("u2-support needs pi = varpi^e");
  const auto instances = or_default(o.instances, {"F2", "F2[x]/(x^2)"});
  const int n = or_default(o.n, 4);
  rec.param("ext", ext_arg);
  rec.param("instances", instances);
  rec.param("n", n);
  const std::uint64_t q = ext->q();
  over_ext_combos(rec, {ext_arg}, instances, [&](const ExtPtr& x_ext, const auto& B, const std::string& tag) {
    DrinfeldMap u(x_ext, B, &cache_of(o));
    const int L = u.required_length(n);
    std::set<std::vector<std::string>> images;
    std::uint64_t count = 0;
    for (const auto& x : u.source().enumerate(L)) {
      const auto y = u.apply(x, n);
      auto wit = [&] { return json{{"x", u.source().to_json(x)}, {"u(x)", u.target().to_json(y)}}; };
      bool support = true, closed = true;
      for (int j = 0; j < n; ++j) {
        if (j % e) {
          support = support && B.is_zero(y[j]);
        } else {
          const int k = j / e;
          closed = closed && k < L && B.equal(y[j], B.pow(x[k], checked_pow(q, static_cast<std::uint64_t>(k) * (e - 1))));
        }
      }
      rec.check(tag + ": u(b)_j = 0 for e not dividing j", support, wit);
      rec.check(tag + ": u(b)_(ke) = b_k^(q^(k(e-1)))", closed, wit);
      std::vector<std::string> key;
      for (const auto& c : y.coords) key.push_back(B.to_json(c).dump());
      images.insert(key);
      ++count;
    }
    std::uint64_t expected = 1;
    for (int j = 0; j < n; j += e) expected *= B.size();
    using R = std::decay_t<decltype(B)>;
    if constexpr (std::is_same_v<R, FiniteField>)
      rec.check(tag + ": image = W_{eN0} (perfect coefficients)", images.size() == expected,
                [&] { return json{{"images", images.size()}, {"expected", expected}}; });
    rec.note(tag + ": " + std::to_string(count) + " inputs of length " + std::to_string(L) + ", " +
             std::to_string(images.size()) + " images, |W_{eN0}| = " + std::to_string(expected));
  });
}

}  // namespace wittlab::detail
