#include "wittlab/greenberg.hpp"

#include "wittlab/errors.hpp"
#include "wittlab/util.hpp"

namespace wittlab {

GhostProblem greenberg_problem(const SpecPtr& spec, int n) {
  if (n < 1) throw InputError("family length must be positive");
  const int e = spec->e();
  const int h = spec->h();
  GhostProblem pb;
  pb.kind = "greenberg_r";
  pb.spec = spec;
  pb.n = n;
  pb.q = spec->q();
  pb.precision = n + solver_guard(e);
  spec->check_precision(pb.precision);
  const int N = pb.precision;
  pb.uniformizer = LocalElem::pi(spec, N);
  pb.vars = make_vars(ra_var_names((n - 1) * h + 1, e));
  const LocalElem p = LocalElem::from_int(spec, spec->p(), N);
  for (int m = 0; m < n; ++m) {
    MPoly t(spec, pb.vars, N);
    LocalElem pi_i = LocalElem::from_int(spec, 1, N);
    for (int i = 0; i < e; ++i) {
      std::vector<int> idx;
      for (int j = 0; j <= m * h; ++j) idx.push_back(j * e + i);
      t += pi_i * ghost_component(spec, pb.vars, idx, m * h, p, spec->p(), N);
      pi_i = pi_i * pb.uniformizer;
    }
    pb.targets.push_back(std::move(t));
  }
  return pb;
}

std::vector<std::vector<ResidueElem>> fpi_witt_coeffs(const LocalFieldSpec& spec, int m) {
  const auto unram = spec.unramified_subring();
  std::vector<std::vector<ResidueElem>> out;
  for (int l = 0; l < spec.e(); ++l)
    out.push_back(unram_to_witt_coords(LocalElem::from_coords(unram, {spec.eisenstein().at(l)}, m), m));
  return out;
}

ExtPtr unramified_part(const SpecPtr& spec) {
  return ExtensionSpec::create(LocalFieldSpec::p_adic_integers(spec->p(), 8), spec->unramified_subring(), nullptr,
                               nullptr);
}

ExtPtr ramified_part(const SpecPtr& spec) {
  return ExtensionSpec::create(spec->unramified_subring(), spec, nullptr, nullptr);
}

}  // namespace wittlab
