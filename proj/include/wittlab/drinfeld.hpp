#pragma once

// The Drinfeld morphism u : W_O -> W_O' and, for totally ramified O'/O, its
// O'-linear extension u^ra on W_O(B) (x) O'.
//
// u is the family with Phi'_m(u) = Phi_{mr}(X), solved over O' with varpi and
// Q = q^r; u^ra is the family with Phi'_m(u^ra) = sum_i varpi^i Phi_m(X_{.,i}).

#include <memory>
#include <string>
#include <vector>

#include "wittlab/extension.hpp"
#include "wittlab/family.hpp"
#include "wittlab/witt.hpp"

namespace wittlab {

/// Formal input length of u at output length n: u_{n-1} reads X_0..X_{(n-1)r}.
int u_input_length(const ExtensionSpec& ext, int n);

/// Variable names X{j}_{i} (coordinate j of tensor component i), j-major.
std::vector<std::string> ra_var_names(int length, int e);

GhostProblem drinfeld_problem(const ExtensionSpec& ext, int n);
/// Requires r = 1.
GhostProblem drinfeld_ra_problem(const ExtensionSpec& ext, int n);

std::shared_ptr<const PolyFamily> drinfeld_family(const ExtensionSpec& ext, int n, bool ra,
                                                  FamilyCache& cache = FamilyCache::global());

/// Coefficients c_0..c_{e-1} in O of the Eisenstein polynomial of varpi over O.
/// Supported when O is unramified with the unramified modulus of O'.
std::vector<LocalElem> ra_relation(const ExtensionSpec& ext);

/// u_{(O,O'')} obtained by substituting the lower family into the upper one,
/// over the variables of the direct family.
std::vector<MPoly> composed_u_polys(const ExtensionSpec& lower, const ExtensionSpec& upper, int n,
                                    const VarList& direct_vars, FamilyCache& cache = FamilyCache::global());

/// One step s = ne + i of the inductive congruence
/// u^ra_s = alpha^n X_{n,i}^(q^(n(e-1)+i)) mod (varpi, J_{s-1}).
struct CongruenceRow {
  int s = 0, n = 0, i = 0;
  std::uint64_t exponent = 0;
  std::string residue;   // u^ra_s mod (varpi, J_{s-1})
  std::string expected;
  bool ok = false;
};
std::vector<CongruenceRow> ra_kernel_congruence(const ExtensionSpec& ext, int s_max,
                                                FamilyCache& cache = FamilyCache::global());

template <CoeffRing R>
class DrinfeldMap {
 public:
  using E = typename R::Elem;
  using Vec = WittVector<E>;

  DrinfeldMap(ExtPtr ext, R ring, FamilyCache* cache = nullptr)
      : ext_(std::move(ext)), src_(ext_->base(), ring, cache), dst_(ext_->top(), std::move(ring), cache) {}

  const ExtensionSpec& ext() const { return *ext_; }
  const ExtPtr& ext_ptr() const { return ext_; }
  const WittRing<R>& source() const { return src_; }
  const WittRing<R>& target() const { return dst_; }

  /// u : W_{O,L}(B) -> W_{O',n}(B).
  Vec apply(const Vec& x, int n) const {
    auto f = family(false, n);
    const int need = std::max(1, f->footprint(0, n) + 1);
    if (x.length() < need)
      throw LengthError("u: input length " + std::to_string(x.length()) + " < " + std::to_string(need) +
                        " needed for output length " + std::to_string(n));
    return apply_family(dst_.ring(), *f, n, {&x});
  }
  /// Shortest input length that determines n output coordinates over B.
  int required_length(int n) const { return std::max(1, family(false, n)->footprint(0, n) + 1); }

  /// u^ra(sum_i t_i (x) varpi^i).
  Vec apply_ra(const std::vector<Vec>& t, int n) const {
    if (ext_->r() != 1) throw UnsupportedError("u^ra needs a totally ramified extension (r = 1)");
    if (static_cast<int>(t.size()) != ext_->e())
      throw InputError("tensor needs " + std::to_string(ext_->e()) + " components");
    auto f = family(true, n);
    std::vector<const Vec*> ops;
    for (int i = 0; i < ext_->e(); ++i) {
      const int need = f->footprint(i, n) + 1;
      if (t[i].length() < need)
        throw LengthError("u^ra: component " + std::to_string(i) + " has length " + std::to_string(t[i].length()) +
                          " < " + std::to_string(need));
      ops.push_back(&t[i]);
    }
    return apply_family(dst_.ring(), *f, n, ops);
  }
  int required_ra_length(int n) const {
    auto f = family(true, n);
    int need = 1;
    for (int i = 0; i < ext_->e(); ++i) need = std::max(need, f->footprint(i, n) + 1);
    return need;
  }

  /// W_{O,len}(B) (x)_O O' as W_{O,len}(B)[t]/(f_varpi(t)).
  TwistedWittAlgebra<R> tensor_algebra(int len) const {
    std::vector<Vec> rel;
    for (const auto& c : ra_relation(*ext_)) rel.push_back(src_.scalar(c, src_.one(len)));
    return TwistedWittAlgebra<R>(src_, len, std::move(rel));
  }

 private:
  std::shared_ptr<const SpecFamily<E>> family(bool ra, int n) const {
    return dst_.specialized_with(ra ? "drinfeld_u_ra" : "drinfeld_u", ext_->family_params(), n, [this, ra](int len) {
      return solve_family(ra ? drinfeld_ra_problem(*ext_, len) : drinfeld_problem(*ext_, len));
    });
  }

  ExtPtr ext_;
  WittRing<R> src_, dst_;
};

}  // namespace wittlab
