#pragma once

// Truncated Witt vectors W_{O,n}(B) over a coefficient ring B.
//
// All arithmetic is evaluation of cached universal families through the
// structure map O -> B. Families are specialized once per ring (coefficients
// mapped into B, vanishing terms dropped) and reused.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "wittlab/coeff_ring.hpp"
#include "wittlab/errors.hpp"
#include "wittlab/family.hpp"

namespace wittlab {

template <class E>
struct WittVector {
  std::vector<E> coords;

  int length() const { return static_cast<int>(coords.size()); }
  const E& operator[](int i) const { return coords[i]; }
  E& operator[](int i) { return coords[i]; }
};

/// Where a family variable reads its value: operand index and coordinate.
/// "X3" -> (0, 3), "Y3" -> (1, 3), "X3_1" -> (1, 3).
struct VarSlot {
  int operand = 0;
  int coord = 0;
};
std::vector<VarSlot> bind_vars(const std::vector<std::string>& names);

template <class E>
struct SpecTerm {
  E coeff;
  std::vector<std::pair<int, std::uint16_t>> factors;  // (variable, exponent)
};

template <class E>
struct SpecPoly {
  std::vector<SpecTerm<E>> terms;
  int max_var = -1;
};

/// A family with coefficients pushed into B.
template <class E>
struct SpecFamily {
  std::shared_ptr<const PolyFamily> source;
  std::vector<SpecPoly<E>> polys;
  std::vector<VarSlot> slots;

  /// Largest coordinate of operand `op` read by the first `count` polynomials, or -1.
  int footprint(int op, int count) const {
    int m = -1;
    for (int k = 0; k < count; ++k)
      for (const auto& t : polys[k].terms)
        for (const auto& [v, e] : t.factors)
          if (slots[v].operand == op) m = std::max(m, slots[v].coord);
    return m;
  }
};

template <CoeffRing R>
SpecFamily<typename R::Elem> specialize(const R& ring, std::shared_ptr<const PolyFamily> family) {
  SpecFamily<typename R::Elem> out;
  out.slots = bind_vars(*family->vars);
  for (const auto& p : family->polys) {
    SpecPoly<typename R::Elem> sp;
    for (std::size_t k = 0; k < p.size(); ++k) {
      auto c = ring.from_local(p.term_coeff(k));
      if (ring.is_zero(c)) continue;
      SpecTerm<typename R::Elem> t{std::move(c), {}};
      for (int v = 0; v < p.num_vars(); ++v)
        if (p.terms()[k].exps[v]) {
          t.factors.push_back({v, p.terms()[k].exps[v]});
          sp.max_var = std::max(sp.max_var, v);
        }
      sp.terms.push_back(std::move(t));
    }
    out.polys.push_back(std::move(sp));
  }
  out.source = std::move(family);
  return out;
}

/// Evaluates one specialized polynomial; `values[v]` may be null only for
/// variables the polynomial does not read.
template <CoeffRing R>
typename R::Elem eval_spec(const R& ring, const SpecPoly<typename R::Elem>& p,
                           const std::vector<const typename R::Elem*>& values) {
  using E = typename R::Elem;
  E acc = ring.zero();
  for (const auto& t : p.terms) {
    E m = t.coeff;
    for (const auto& [v, e] : t.factors) {
      if (!values[v]) throw LengthError("input vector too short for the requested output length");
      m = ring.mul(m, ring.pow(*values[v], e));
    }
    acc = ring.add(acc, m);
  }
  return acc;
}

/// Applies the first `count` polynomials of a specialized family to operands.
template <CoeffRing R>
WittVector<typename R::Elem> apply_family(const R& ring, const SpecFamily<typename R::Elem>& f, int count,
                                          const std::vector<const WittVector<typename R::Elem>*>& operands) {
  using E = typename R::Elem;
  std::vector<const E*> values(f.slots.size(), nullptr);
  for (std::size_t v = 0; v < f.slots.size(); ++v) {
    const auto& s = f.slots[v];
    if (s.operand < static_cast<int>(operands.size()) && s.coord < operands[s.operand]->length())
      values[v] = &(*operands[s.operand])[s.coord];
  }
  WittVector<E> out;
  out.coords.reserve(count);
  for (int k = 0; k < count; ++k) out.coords.push_back(eval_spec(ring, f.polys.at(k), values));
  return out;
}

template <CoeffRing R>
class WittRing {
 public:
  using E = typename R::Elem;
  using Vec = WittVector<E>;

  WittRing(SpecPtr spec, R ring, FamilyCache* cache = nullptr)
      : state_(std::make_shared<State>(std::move(spec), std::move(ring), cache ? cache : &FamilyCache::global())) {}

  const SpecPtr& spec() const { return state_->spec; }
  const R& ring() const { return state_->ring; }
  FamilyCache& cache() const { return *state_->cache; }

  Vec zero(int n) const { return Vec{std::vector<E>(n, ring().zero())}; }
  Vec one(int n) const { return teichmuller(ring().one(), n); }
  Vec teichmuller(const E& b, int n) const {
    check_length(n);
    Vec v = zero(n);
    v[0] = b;
    return v;
  }
  Vec from_coords(std::vector<E> c) const {
    check_length(static_cast<int>(c.size()));
    return Vec{std::move(c)};
  }
  static Vec truncate(const Vec& x, int n) {
    if (n > x.length()) throw LengthError("cannot extend a truncated Witt vector");
    return Vec{std::vector<E>(x.coords.begin(), x.coords.begin() + n)};
  }

  bool equal(const Vec& x, const Vec& y) const {
    if (x.length() != y.length()) return false;
    for (int i = 0; i < x.length(); ++i)
      if (!ring().equal(x[i], y[i])) return false;
    return true;
  }
  bool is_zero(const Vec& x) const {
    for (const auto& c : x.coords)
      if (!ring().is_zero(c)) return false;
    return true;
  }

  Vec add(const Vec& x, const Vec& y) const { return binary("sum", {}, x, y); }
  Vec mul(const Vec& x, const Vec& y) const { return binary("prod", {}, x, y); }
  Vec neg(const Vec& x) const { return unary("neg", {}, x, x.length()); }
  Vec sub(const Vec& x, const Vec& y) const { return add(x, neg(y)); }
  /// lambda * x for lambda in O.
  Vec scalar(const LocalElem& lambda, const Vec& x) const {
    if (!lambda.spec().same_ring(*spec())) throw MismatchError("scalar from a different ring");
    return unary("scalar", {{"lambda", lambda.signed_coords()}}, x, x.length());
  }
  /// F : W_{n+1} -> W_n.
  Vec frobenius(const Vec& x) const {
    if (x.length() < 2) throw LengthError("Frobenius needs length >= 2 (it maps length n+1 to n)");
    return unary("frobenius", {}, x, x.length() - 1);
  }
  /// V : W_n -> W_{n+1}, the coordinate shift.
  Vec verschiebung(const Vec& x) const {
    Vec v = zero(x.length() + 1);
    for (int i = 0; i < x.length(); ++i) v[i + 1] = x[i];
    return v;
  }
  /// Applies the uniformizer-change family h with w = pi * unit.
  Vec change_uniformizer(const LocalElem& unit, bool reverse, const Vec& x) const {
    return unary("uniformizer_change", {{"unit", unit.signed_coords()}, {"reverse", reverse}}, x, x.length());
  }

  /// (Phi_0(x), ..., Phi_{n-1}(x)) through the structure map.
  std::vector<E> ghost(const Vec& x) const {
    const auto& r = ring();
    const E pi = r.from_local(LocalElem::pi(spec(), std::max(1, spec()->default_precision())));
    const std::uint64_t q = spec()->q();
    std::vector<E> out;
    for (int m = 0; m < x.length(); ++m) {
      E acc = r.zero();
      E pi_i = r.one();
      std::uint64_t e = 1;
      for (int i = 0; i < m; ++i) e *= q;
      for (int i = 0; i <= m; ++i) {
        acc = r.add(acc, r.mul(pi_i, r.pow(x[i], e)));
        pi_i = r.mul(pi_i, pi);
        e /= q;
      }
      out.push_back(acc);
    }
    return out;
  }

  /// Coordinatewise union of vectors with pairwise disjoint supports.
  Vec glue(const std::vector<Vec>& parts) const {
    if (parts.empty()) throw InputError("glue needs at least one vector");
    const int n = parts[0].length();
    Vec out = zero(n);
    std::vector<int> owner(n, -1);
    for (std::size_t k = 0; k < parts.size(); ++k) {
      if (parts[k].length() != n) throw InputError("glue: vectors of different lengths");
      for (int i = 0; i < n; ++i) {
        if (ring().is_zero(parts[k][i])) continue;
        if (owner[i] >= 0)
          throw InputError("glue: supports overlap at coordinate " + std::to_string(i) + " (parts " +
                           std::to_string(owner[i]) + " and " + std::to_string(k) + ")");
        owner[i] = static_cast<int>(k);
        out[i] = parts[k][i];
      }
    }
    return out;
  }

  /// sum_j pi^j [b_j].
  Vec pi_series(const std::vector<E>& digits) const {
    const int n = static_cast<int>(digits.size());
    check_length(n);
    Vec acc = zero(n);
    LocalElem pj = LocalElem::from_int(spec(), 1, spec()->default_precision());
    const LocalElem pi = LocalElem::pi(spec(), spec()->default_precision());
    for (int j = 0; j < n; ++j) {
      acc = add(acc, scalar(pj, teichmuller(digits[j], n)));
      pj = pj * pi;
    }
    return acc;
  }

  /// Digits b_j with x = sum_j pi^j [b_j]; needs q-th roots in B (k-algebras).
  std::vector<E> pi_series_inverse(const Vec& x) const
    requires(KAlgebra<R> && HasQRoot<R>)
  {
    std::vector<E> digits;
    Vec cur = x;
    const std::uint64_t q = spec()->q();
    while (true) {
      digits.push_back(cur[0]);
      if (cur.length() == 1) break;
      const Vec d = sub(cur, teichmuller(cur[0], cur.length()));
      // d = V(y) = V(F(z)) = pi z with z the coordinatewise q-th root of y.
      Vec z = zero(cur.length() - 1);
      for (int i = 1; i < d.length(); ++i) {
        auto root = ring().q_root(d[i], q);
        if (!root) throw UnsupportedError("pi_series_inverse: coordinate has no q-th root");
        z[i - 1] = *root;
      }
      cur = std::move(z);
    }
    return digits;
  }

  /// Specialized family, cached per ring.
  std::shared_ptr<const SpecFamily<E>> specialized(const std::string& kind, const nlohmann::json& params, int n) const {
    return specialized_with(kind, params, n, [&](int len) { return solve_family(witt_problem(kind, spec(), params, len)); });
  }
  std::shared_ptr<const SpecFamily<E>> specialized_with(const std::string& kind, const nlohmann::json& params, int n,
                                                        const FamilyCache::Compute& compute) const {
    const std::string k = kind + "|" + params.dump();
    {
      std::lock_guard lock(state_->mu);
      auto it = state_->specialized.find(k);
      if (it != state_->specialized.end() && it->second->source->n >= n) return it->second;
    }
    auto fam = cache().get(*spec(), kind, params, n, compute);
    auto sf = std::make_shared<const SpecFamily<E>>(specialize(ring(), fam));
    std::lock_guard lock(state_->mu);
    state_->specialized[k] = sf;
    return sf;
  }

  nlohmann::json to_json(const Vec& x) const {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& c : x.coords) out.push_back(ring().to_json(c));
    return out;
  }
  Vec from_json(const nlohmann::json& j) const {
    if (!j.is_array() || j.empty()) throw InputError("Witt vector must be a non-empty array of coordinates");
    Vec v;
    for (const auto& c : j) v.coords.push_back(ring().from_json(c));
    return v;
  }
  std::string format(const Vec& x) const {
    std::string s = "(";
    for (int i = 0; i < x.length(); ++i) s += (i ? ", " : "") + ring().format(x[i]);
    return s + ")";
  }

  /// All vectors of length n, lexicographic with coordinate 0 most significant.
  std::vector<Vec> enumerate(int n) const
    requires Enumerable<R>
  {
    const std::uint64_t s = ring().size();
    std::uint64_t total = 1;
    for (int i = 0; i < n; ++i) {
      if (total > (1ULL << 24) / s) throw UnsupportedError("enumeration too large");
      total *= s;
    }
    std::vector<Vec> out;
    out.reserve(total);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      Vec v = zero(n);
      std::uint64_t t = idx;
      for (int i = n - 1; i >= 0; --i) {
        v[i] = ring().element(t % s);
        t /= s;
      }
      out.push_back(std::move(v));
    }
    return out;
  }

 private:
  struct State {
    State(SpecPtr s, R r, FamilyCache* c) : spec(std::move(s)), ring(std::move(r)), cache(c) {}
    SpecPtr spec;
    R ring;
    FamilyCache* cache;
    std::mutex mu;
    std::map<std::string, std::shared_ptr<const SpecFamily<E>>> specialized;
  };

  static void check_length(int n) {
    if (n < 1) throw LengthError("Witt vector length must be positive");
  }

  Vec binary(const std::string& kind, const nlohmann::json& params, const Vec& x, const Vec& y) const {
    if (x.length() != y.length()) throw LengthError("operands of different lengths");
    const int n = x.length();
    check_length(n);
    auto f = specialized(kind, params, n);
    return apply_family(ring(), *f, n, {&x, &y});
  }
  Vec unary(const std::string& kind, const nlohmann::json& params, const Vec& x, int out_len) const {
    check_length(out_len);
    auto f = specialized(kind, params, out_len);
    return apply_family(ring(), *f, out_len, {&x});
  }

  std::shared_ptr<State> state_;
};

/// B-algebra W(B)[t]/(t^e + c_{e-1} t^{e-1} + ... + c_0) with c_l in W_n(B):
/// elements are e-tuples of length-n Witt vectors (coefficients of 1..t^{e-1}).
template <CoeffRing R>
class TwistedWittAlgebra {
 public:
  using E = typename R::Elem;
  using Vec = WittVector<E>;
  using Elem = std::vector<Vec>;

  TwistedWittAlgebra(WittRing<R> witt, int n, std::vector<Vec> relation)
      : w_(std::move(witt)), n_(n), rel_(std::move(relation)) {
    if (rel_.empty()) throw InputError("twisted algebra needs a relation of degree >= 1");
    for (const auto& c : rel_)
      if (c.length() != n_) throw LengthError("relation coefficient of the wrong length");
  }

  const WittRing<R>& witt() const { return w_; }
  int degree() const { return static_cast<int>(rel_.size()); }
  int length() const { return n_; }
  const std::vector<Vec>& relation() const { return rel_; }

  Elem zero() const { return Elem(degree(), w_.zero(n_)); }
  Elem one() const {
    Elem x = zero();
    x[0] = w_.one(n_);
    return x;
  }
  Elem generator() const {
    Elem x = zero();
    if (degree() == 1) {
      x[0] = w_.neg(rel_[0]);
    } else {
      x[1] = w_.one(n_);
    }
    return x;
  }
  Elem from_base(const Vec& v) const {
    Elem x = zero();
    x[0] = v;
    return x;
  }
  Elem add(const Elem& a, const Elem& b) const {
    Elem out(degree());
    for (int i = 0; i < degree(); ++i) out[i] = w_.add(a[i], b[i]);
    return out;
  }
  Elem neg(const Elem& a) const {
    Elem out(degree());
    for (int i = 0; i < degree(); ++i) out[i] = w_.neg(a[i]);
    return out;
  }
  Elem mul(const Elem& a, const Elem& b) const {
    const int e = degree();
    std::vector<Vec> prod(2 * e - 1, w_.zero(n_));
    for (int i = 0; i < e; ++i) {
      if (w_.is_zero(a[i])) continue;
      for (int j = 0; j < e; ++j) {
        if (w_.is_zero(b[j])) continue;
        prod[i + j] = w_.add(prod[i + j], w_.mul(a[i], b[j]));
      }
    }
    for (int t = 2 * e - 2; t >= e; --t) {
      if (w_.is_zero(prod[t])) continue;
      for (int l = 0; l < e; ++l)
        prod[t - e + l] = w_.sub(prod[t - e + l], w_.mul(prod[t], rel_[l]));
    }
    prod.resize(e);
    return prod;
  }
  bool equal(const Elem& a, const Elem& b) const {
    for (int i = 0; i < degree(); ++i)
      if (!w_.equal(a[i], b[i])) return false;
    return true;
  }
  bool is_zero(const Elem& a) const {
    for (const auto& v : a)
      if (!w_.is_zero(v)) return false;
    return true;
  }

  nlohmann::json to_json(const Elem& a) const {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& v : a) out.push_back(w_.to_json(v));
    return out;
  }
  Elem from_json(const nlohmann::json& j) const {
    if (!j.is_array() || static_cast<int>(j.size()) != degree())
      throw InputError("twisted element needs " + std::to_string(degree()) + " components");
    Elem out;
    for (const auto& v : j) {
      out.push_back(w_.from_json(v));
      if (out.back().length() != n_) throw LengthError("component of the wrong length");
    }
    return out;
  }
  std::string format(const Elem& a) const {
    std::string s = "[";
    for (int i = 0; i < degree(); ++i) s += (i ? ", " : "") + w_.format(a[i]);
    return s + "]";
  }

  /// All elements: the component tuples enumerated lexicographically.
  std::vector<Elem> enumerate() const
    requires Enumerable<R>
  {
    const auto vecs = w_.enumerate(n_);
    std::uint64_t total = 1;
    for (int i = 0; i < degree(); ++i) {
      if (total > (1ULL << 24) / vecs.size()) throw UnsupportedError("enumeration too large");
      total *= vecs.size();
    }
    std::vector<Elem> out;
    out.reserve(total);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      Elem x(degree());
      std::uint64_t t = idx;
      for (int i = degree() - 1; i >= 0; --i) {
        x[i] = vecs[t % vecs.size()];
        t /= vecs.size();
      }
      out.push_back(std::move(x));
    }
    return out;
  }

 private:
  WittRing<R> w_;
  int n_;
  std::vector<Vec> rel_;
};

}  // namespace wittlab
