#include "wittlab/drinfeld.hpp"

#include <algorithm>

#include "wittlab/errors.hpp"
#include "wittlab/util.hpp"

namespace wittlab {
namespace {

std::vector<int> range_indices(int count) {
  std::vector<int> idx(count);
  for (int i = 0; i < count; ++i) idx[i] = i;
  return idx;
}

GhostProblem base_problem(const ExtensionSpec& ext, const std::string& kind, int n) {
  if (n < 1) throw InputError("family length must be positive");
  GhostProblem pb;
  pb.kind = kind;
  pb.params = ext.family_params();
  pb.spec = ext.top();
  pb.n = n;
  pb.q = checked_pow(ext.q(), ext.r());
  pb.precision = n + solver_guard(ext.top()->e());
  ext.top()->check_precision(pb.precision);
  pb.uniformizer = LocalElem::pi(ext.top(), pb.precision);
  return pb;
}

}  // namespace

int u_input_length(const ExtensionSpec& ext, int n) { return (n - 1) * ext.r() + 1; }

std::vector<std::string> ra_var_names(int length, int e) {
  std::vector<std::string> names;
  for (int j = 0; j < length; ++j)
    for (int i = 0; i < e; ++i) names.push_back("X" + std::to_string(j) + "_" + std::to_string(i));
  return names;
}

GhostProblem drinfeld_problem(const ExtensionSpec& ext, int n) {
  GhostProblem pb = base_problem(ext, "drinfeld_u", n);
  const int N = pb.precision;
  pb.vars = make_vars(indexed_vars("X", u_input_length(ext, n)));
  const LocalElem ipi = ext.pi_image(N);
  const int r = ext.r();
  for (int m = 0; m < n; ++m)
    pb.targets.push_back(ghost_component(pb.spec, pb.vars, range_indices(m * r + 1), m * r, ipi, ext.q(), N));
  return pb;
}

GhostProblem drinfeld_ra_problem(const ExtensionSpec& ext, int n) {
  if (ext.r() != 1) throw UnsupportedError("u^ra needs a totally ramified extension (r = 1)");
  GhostProblem pb = base_problem(ext, "drinfeld_u_ra", n);
  const int N = pb.precision;
  const int e = ext.e();
  pb.vars = make_vars(ra_var_names(n, e));
  const LocalElem ipi = ext.pi_image(N);
  for (int m = 0; m < n; ++m) {
    MPoly t(pb.spec, pb.vars, N);
    LocalElem wi = LocalElem::from_int(pb.spec, 1, N);
    for (int i = 0; i < e; ++i) {
      std::vector<int> idx;
      for (int j = 0; j <= m; ++j) idx.push_back(j * e + i);
      t += wi * ghost_component(pb.spec, pb.vars, idx, m, ipi, ext.q(), N);
      wi = wi * pb.uniformizer;
    }
    pb.targets.push_back(std::move(t));
  }
  return pb;
}

std::shared_ptr<const PolyFamily> drinfeld_family(const ExtensionSpec& ext, int n, bool ra, FamilyCache& cache) {
  return cache.get(*ext.top(), ra ? "drinfeld_u_ra" : "drinfeld_u", ext.family_params(), n, [&ext, ra](int len) {
    return solve_family(ra ? drinfeld_ra_problem(ext, len) : drinfeld_problem(ext, len));
  });
}

std::vector<LocalElem> ra_relation(const ExtensionSpec& ext) {
  const auto& base = ext.base();
  const auto& top = ext.top();
  if (ext.r() != 1) throw UnsupportedError("the tensor algebra needs a totally ramified extension (r = 1)");
  if (base->e() != 1 || (base->h() > 1 && base->unram_modulus() != top->unram_modulus()))
    throw UnsupportedError("the tensor algebra needs O = W(k') with the unramified modulus of O'");
  std::vector<LocalElem> out;
  for (int l = 0; l < ext.e(); ++l)
    out.push_back(LocalElem::from_coords(base, {top->eisenstein().at(l)}, base->max_precision()));
  return out;
}

std::vector<MPoly> composed_u_polys(const ExtensionSpec& lower, const ExtensionSpec& upper, int n,
                                    const VarList& direct_vars, FamilyCache& cache) {
  if (!lower.top()->same_ring(*upper.base())) throw MismatchError("tower: lower top differs from upper base");
  const auto up = drinfeld_family(upper, n, false, cache);
  const int mid = u_input_length(upper, n);
  const auto low = drinfeld_family(lower, mid, false, cache);

  std::vector<MPoly> values;
  for (int k = 0; k < mid; ++k) {
    const MPoly& g = low->polys[k];
    MPoly out(upper.top(), direct_vars, g.precision() * upper.e());
    for (std::size_t t = 0; t < g.size(); ++t) {
      Exps ex{};
      for (int v = 0; v < g.num_vars(); ++v) {
        if (!g.terms()[t].exps[v]) continue;
        const auto& name = (*g.vars())[v];
        auto it = std::find(direct_vars->begin(), direct_vars->end(), name);
        if (it == direct_vars->end()) throw InputError("tower: variable " + name + " missing from the direct family");
        ex[it - direct_vars->begin()] = g.terms()[t].exps[v];
      }
      out += MPoly::monomial(upper.embed(g.term_coeff(t)), direct_vars, ex);
    }
    values.push_back(std::move(out));
  }
  std::vector<MPoly> result;
  for (int m = 0; m < n; ++m) result.push_back(up->polys[m].compose(values));
  return result;
}

std::vector<CongruenceRow> ra_kernel_congruence(const ExtensionSpec& ext, int s_max, FamilyCache& cache) {
  if (ext.r() != 1) throw UnsupportedError("the congruence check needs a totally ramified extension");
  if (s_max < 0) throw InputError("s_max must be non-negative");
  const auto fam = drinfeld_family(ext, s_max + 1, true, cache);
  const int e = ext.e();
  const std::uint64_t q = ext.q();
  const auto& top = ext.top();
  const LocalElem alpha = ext.alpha(4);
  auto gen_exponent = [&](int n, int i) { return checked_pow(q, n * (e - 1) + i); };

  std::vector<CongruenceRow> rows;
  for (int s = 0; s <= s_max; ++s) {
    CongruenceRow row;
    row.s = s;
    row.n = s / e;
    row.i = s % e;
    row.exponent = gen_exponent(row.n, row.i);
    const MPoly& u = fam->polys[s];
    MPoly res(top, u.vars(), 1);
    for (std::size_t t = 0; t < u.size(); ++t) {
      const LocalElem c = u.term_coeff(t).reduced(1);
      if (c.is_zero()) continue;
      bool in_j = false;
      for (int g = 0; g <= s - 1 && !in_j; ++g)
        if (u.terms()[t].exps[g] >= gen_exponent(g / e, g % e)) in_j = true;
      if (!in_j) res += MPoly::monomial(c, u.vars(), u.terms()[t].exps);
    }
    if (row.exponent > 0xFFFF) throw PrecisionError("congruence exponent exceeds the monomial limit");
    Exps ex{};
    ex[row.n * e + row.i] = static_cast<std::uint16_t>(row.exponent);
    const MPoly expected = MPoly::monomial(pow(alpha, row.n).reduced(1), u.vars(), ex);
    row.ok = res == expected;
    row.residue = res.format();
    row.expected = expected.format();
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace wittlab
