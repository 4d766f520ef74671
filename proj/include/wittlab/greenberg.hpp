#pragma once

// Truncated Greenberg algebra R(A) = W_m(A)[T]/(f_pi(T)) for a k-algebra A and
// the comparison map r : R(A) -> W_{O,n}(A).
//
// W_m is the p-typical Witt ring; f_pi acts through W_m(k) -> W_m(A). The map
// r is the family with Phi_m(r) = sum_i pi^i Phi^(p)_{mh}(X_{.,i}); it equals
// u^ra o (u^un (x) id) for the tower Z_p -> W(k) -> O.
//
// Finite-level pairing: an m-truncated algebra is compared with W_{O,n} for
// n = m * e, the unique n with |R(A)| = |W_{O,n}(A)|. The map is defined only
// when the effective footprint of r_0..r_{n-1} over A stays below m.

#include <memory>
#include <string>
#include <vector>

#include "wittlab/drinfeld.hpp"
#include "wittlab/witt.hpp"

namespace wittlab {

/// Variables X{j}_{i} with j <= (n-1)h.
GhostProblem greenberg_problem(const SpecPtr& spec, int n);

/// Coefficients f_0..f_{e-1} of the Eisenstein polynomial as p-typical Witt
/// coordinates over k, length m.
std::vector<std::vector<ResidueElem>> fpi_witt_coeffs(const LocalFieldSpec& spec, int m);

/// Z_p -> W(k) and W(k) -> O.
ExtPtr unramified_part(const SpecPtr& spec);
ExtPtr ramified_part(const SpecPtr& spec);

inline int matched_length(const LocalFieldSpec& spec, int m) { return m * spec.e(); }

template <CoeffRing R>
  requires KAlgebra<R>
class GreenbergAlgebra {
 public:
  using E = typename R::Elem;
  using Vec = WittVector<E>;
  using Elem = std::vector<Vec>;

  GreenbergAlgebra(SpecPtr spec, R ring, int m, FamilyCache* cache = nullptr)
      : spec_(std::move(spec)),
        m_(m),
        ptyp_(LocalFieldSpec::p_adic_integers(spec_->p(), 8), ring, cache),
        alg_(ptyp_, m, relation(*spec_, ptyp_, m)),
        target_(spec_, ring, cache),
        cache_(cache) {}

  const SpecPtr& spec() const { return spec_; }
  int m() const { return m_; }
  int e() const { return spec_->e(); }
  const R& ring() const { return target_.ring(); }
  const WittRing<R>& ptypical() const { return ptyp_; }
  const WittRing<R>& target() const { return target_; }
  const TwistedWittAlgebra<R>& algebra() const { return alg_; }

  Elem zero() const { return alg_.zero(); }
  Elem one() const { return alg_.one(); }
  /// Class of T.
  Elem generator() const { return alg_.generator(); }
  /// Image of lambda = sum_j a_j pi^j (a_j in W(k)) as sum_j a_j T^j.
  Elem from_local(const LocalElem& lambda) const {
    if (!lambda.spec().same_ring(*spec_)) throw MismatchError("scalar from a different ring");
    const auto unram = spec_->unramified_subring();
    Elem out = zero();
    for (int j = 0; j < e(); ++j) {
      std::vector<std::int64_t> block;
      for (int i = 0; i < spec_->h(); ++i) block.push_back(static_cast<std::int64_t>(lambda.coord(j, i)));
      const auto coords = unram_to_witt_coords(LocalElem::from_coords(unram, {block}, m_), m_);
      for (int k = 0; k < m_; ++k) out[j][k] = ring().from_residue(coords[k]);
    }
    return out;
  }
  Elem add(const Elem& a, const Elem& b) const { return alg_.add(a, b); }
  Elem neg(const Elem& a) const { return alg_.neg(a); }
  Elem mul(const Elem& a, const Elem& b) const { return alg_.mul(a, b); }
  bool equal(const Elem& a, const Elem& b) const { return alg_.equal(a, b); }
  bool is_zero(const Elem& a) const { return alg_.is_zero(a); }
  std::vector<Elem> enumerate() const
    requires Enumerable<R>
  {
    return alg_.enumerate();
  }
  nlohmann::json to_json(const Elem& a) const { return alg_.to_json(a); }
  Elem from_json(const nlohmann::json& j) const { return alg_.from_json(j); }
  std::string format(const Elem& a) const { return alg_.format(a); }

  /// Smallest m whose components cover r_0..r_{n-1} over A.
  int required_m(int n) const {
    auto f = family(n);
    int need = 1;
    for (int i = 0; i < e(); ++i) need = std::max(need, f->footprint(i, n) + 1);
    return need;
  }

  /// Coordinates of component i read by r_0..r_{n-1}.
  int component_length(int i, int n) const { return family(n)->footprint(i, n) + 1; }

  /// r through the direct family.
  Vec r(const Elem& x, int n) const {
    auto f = family(n);
    std::vector<const Vec*> ops;
    for (int i = 0; i < e(); ++i) {
      const int need = f->footprint(i, n) + 1;
      if (m_ < need)
        throw LengthError("r: m = " + std::to_string(m_) + " is too small for n = " + std::to_string(n) +
                          " (needs m >= " + std::to_string(need) + ")");
      ops.push_back(&x[i]);
    }
    return apply_family(ring(), *f, n, ops);
  }

  /// r as u^ra applied to (u^un(x_0), ..., u^un(x_{e-1})).
  Vec r_factorized(const Elem& x, int n) const {
    DrinfeldMap<R> un(unramified_part(spec_), ring(), cache_);
    DrinfeldMap<R> ra(ramified_part(spec_), ring(), cache_);
    const int len = ra.required_ra_length(n);
    std::vector<Vec> y;
    for (int i = 0; i < e(); ++i) y.push_back(un.apply(x[i], len));
    return ra.apply_ra(y, n);
  }

 private:
  static std::vector<Vec> relation(const LocalFieldSpec& spec, const WittRing<R>& w, int m) {
    std::vector<Vec> out;
    for (const auto& coeffs : fpi_witt_coeffs(spec, m)) {
      Vec v = w.zero(m);
      for (int j = 0; j < m; ++j) v[j] = w.ring().from_residue(coeffs[j]);
      out.push_back(std::move(v));
    }
    return out;
  }

  std::shared_ptr<const SpecFamily<E>> family(int n) const {
    const SpecPtr spec = spec_;
    return target_.specialized_with("greenberg_r", nlohmann::json::object(), n,
                                    [spec](int len) { return solve_family(greenberg_problem(spec, len)); });
  }

  SpecPtr spec_;
  int m_;
  WittRing<R> ptyp_;
  TwistedWittAlgebra<R> alg_;
  WittRing<R> target_;
  FamilyCache* cache_;
};

}  // namespace wittlab
