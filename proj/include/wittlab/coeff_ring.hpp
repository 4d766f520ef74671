#pragma once

// Coefficient algebras B for Witt vectors.
//
// A coefficient ring is any type satisfying the CoeffRing concept below.
// Rings over the residue field k (every instance except TorsionFreeLift)
// receive O through O -> k -> B; TorsionFreeLift receives it through the
// coefficient embedding O/pi^N -> (O/pi^N)[vars].

#include <concepts>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wittlab/errors.hpp"
#include "wittlab/finite_field.hpp"
#include "wittlab/local_ring.hpp"
#include "wittlab/mpoly.hpp"

namespace wittlab {

template <class R>
concept CoeffRing = requires(const R& r, const typename R::Elem& a, const typename R::Elem& b,
                             const LocalElem& x, const nlohmann::json& j) {
  { r.zero() } -> std::convertible_to<typename R::Elem>;
  { r.one() } -> std::convertible_to<typename R::Elem>;
  { r.add(a, b) } -> std::convertible_to<typename R::Elem>;
  { r.neg(a) } -> std::convertible_to<typename R::Elem>;
  { r.mul(a, b) } -> std::convertible_to<typename R::Elem>;
  { r.pow(a, std::uint64_t{}) } -> std::convertible_to<typename R::Elem>;
  { r.equal(a, b) } -> std::convertible_to<bool>;
  { r.is_zero(a) } -> std::convertible_to<bool>;
  { r.from_local(x) } -> std::convertible_to<typename R::Elem>;
  { r.to_json(a) } -> std::convertible_to<nlohmann::json>;
  { r.from_json(j) } -> std::convertible_to<typename R::Elem>;
  { r.format(a) } -> std::convertible_to<std::string>;
  { r.describe() } -> std::convertible_to<std::string>;
};

/// Rings whose elements can be listed; `size()` elements in lexicographic order
/// of their coordinate representations.
template <class R>
concept Enumerable = CoeffRing<R> && requires(const R& r, std::uint64_t i) {
  { r.size() } -> std::convertible_to<std::uint64_t>;
  { r.element(i) } -> std::convertible_to<typename R::Elem>;
};

/// k-algebras: rings of characteristic p receiving the residue field.
template <class R>
concept KAlgebra = CoeffRing<R> && requires(const R& r, const ResidueElem& t, const typename R::Elem& a,
                                            std::uint64_t q) {
  { r.from_residue(t) } -> std::convertible_to<typename R::Elem>;
  { r.characteristic() } -> std::convertible_to<std::uint32_t>;
};

/// Rings with a partial q-th root; returns nullopt when no root exists.
template <class R>
concept HasQRoot = CoeffRing<R> && requires(const R& r, const typename R::Elem& a, std::uint64_t q) {
  { r.q_root(a, q) } -> std::convertible_to<std::optional<typename R::Elem>>;
};

template <CoeffRing R>
typename R::Elem sub(const R& r, const typename R::Elem& a, const typename R::Elem& b) {
  return r.add(a, r.neg(b));
}

template <CoeffRing R>
typename R::Elem q_power_frobenius(const R& r, const typename R::Elem& a, std::uint64_t q) {
  return r.pow(a, q);
}

/// Generic square-and-multiply.
template <class R>
typename R::Elem ring_pow(const R& r, typename R::Elem a, std::uint64_t e) {
  typename R::Elem result = r.one();
  while (e) {
    if (e & 1) result = r.mul(result, a);
    e >>= 1;
    if (e) a = r.mul(a, a);
  }
  return result;
}

/// Image of a residue-field element in F_{p^d}: the prime field embeds
/// everywhere, otherwise the two fields must coincide.
FiniteFieldSpec::Code embed_residue(const ResidueElem& t, const FiniteFieldSpec& target);

/// Field descriptor from JSON: {"p":2,"d":2} or {"p":2,"modulus":[1,1,1]}.
std::shared_ptr<const FiniteFieldSpec> field_from_json(const nlohmann::json& j);
nlohmann::json field_to_json(const FiniteFieldSpec& f);

// ---------------------------------------------------------------------------

class FiniteField {
 public:
  using Elem = FiniteFieldSpec::Code;

  explicit FiniteField(std::shared_ptr<const FiniteFieldSpec> field) : f_(std::move(field)) {}
  static FiniteField parse(const nlohmann::json& j) { return FiniteField(field_from_json(j)); }

  const FiniteFieldSpec& field() const { return *f_; }
  const std::shared_ptr<const FiniteFieldSpec>& field_ptr() const { return f_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem add(Elem a, Elem b) const { return f_->add(a, b); }
  Elem neg(Elem a) const { return f_->neg(a); }
  Elem mul(Elem a, Elem b) const { return f_->mul(a, b); }
  Elem pow(Elem a, std::uint64_t e) const { return f_->pow(a, e); }
  bool equal(Elem a, Elem b) const { return a == b; }
  bool is_zero(Elem a) const { return a == 0; }
  Elem from_residue(const ResidueElem& t) const { return embed_residue(t, *f_); }
  Elem from_local(const LocalElem& x) const { return from_residue(residue(x)); }
  std::uint32_t characteristic() const { return f_->p(); }
  std::optional<Elem> q_root(Elem a, std::uint64_t q) const;

  std::uint64_t size() const { return f_->size(); }
  Elem element(std::uint64_t i) const { return static_cast<Elem>(i); }

  nlohmann::json to_json(Elem a) const;
  Elem from_json(const nlohmann::json& j) const;
  std::string format(Elem a) const { return f_->format(a); }
  std::string describe() const;
  nlohmann::json descriptor() const;

 private:
  std::shared_ptr<const FiniteFieldSpec> f_;
};

/// k[x_1..x_t]/I for I generated by monomials, or k[x]/(g) for a single
/// univariate g with unit leading coefficient. Finite-dimensional over k.
/// Elements are coordinate vectors over the standard monomial basis, packed
/// into an integer code: digit i (base |k|) is the coefficient of basis[i].
class QuotientAlgebra {
 public:
  using Elem = std::uint64_t;

  QuotientAlgebra(std::shared_ptr<const FiniteFieldSpec> field, std::vector<std::string> vars,
                  std::vector<std::string> ideal);
  static QuotientAlgebra parse(const nlohmann::json& j);

  const FiniteFieldSpec& field() const { return *f_; }
  int dimension() const { return static_cast<int>(basis_.size()); }
  const std::vector<std::vector<int>>& basis() const { return basis_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem add(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem pow(Elem a, std::uint64_t e) const { return ring_pow(*this, a, e); }
  bool equal(Elem a, Elem b) const { return a == b; }
  bool is_zero(Elem a) const { return a == 0; }
  Elem from_residue(const ResidueElem& t) const { return embed_residue(t, *f_); }
  Elem from_local(const LocalElem& x) const { return from_residue(residue(x)); }
  std::uint32_t characteristic() const { return f_->p(); }
  /// A q-th root by search over the (finite) algebra, smallest code first.
  std::optional<Elem> q_root(Elem a, std::uint64_t q) const;

  std::uint64_t size() const { return size_; }
  Elem element(std::uint64_t i) const { return i; }
  /// Generator x_i as an element.
  Elem variable(int i) const;
  Elem scalar(FiniteFieldSpec::Code c) const { return c; }

  std::vector<FiniteFieldSpec::Code> coords(Elem a) const;
  Elem from_coords(const std::vector<FiniteFieldSpec::Code>& c) const;

  nlohmann::json to_json(Elem a) const;
  Elem from_json(const nlohmann::json& j) const;
  std::string format(Elem a) const;
  std::string describe() const;
  nlohmann::json descriptor() const;

 private:
  Elem mul_slow(Elem a, Elem b) const;

  std::shared_ptr<const FiniteFieldSpec> f_;
  std::vector<std::string> vars_;
  std::vector<std::string> ideal_;
  std::vector<std::vector<int>> basis_;  // exponent vectors
  // product of basis i and j: list of (basis index, coefficient)
  std::vector<std::vector<std::pair<int, FiniteFieldSpec::Code>>> table_;
  std::uint64_t size_ = 0;
  std::vector<Elem> mul_cache_;
  std::vector<Elem> add_cache_;
};

/// k[x] truncated to degree <= cap; a product exceeding the cap throws.
class BoundedPoly {
 public:
  using Elem = std::vector<FiniteFieldSpec::Code>;  // trimmed, low to high

  BoundedPoly(std::shared_ptr<const FiniteFieldSpec> field, std::string var, int cap);
  static BoundedPoly parse(const nlohmann::json& j);

  const FiniteFieldSpec& field() const { return *f_; }
  int cap() const { return cap_; }

  Elem zero() const { return {}; }
  Elem one() const { return {1}; }
  Elem add(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem pow(const Elem& a, std::uint64_t e) const;
  bool equal(const Elem& a, const Elem& b) const { return a == b; }
  bool is_zero(const Elem& a) const { return a.empty(); }
  Elem from_residue(const ResidueElem& t) const;
  Elem from_local(const LocalElem& x) const { return from_residue(residue(x)); }
  std::uint32_t characteristic() const { return f_->p(); }
  static int degree(const Elem& a) { return static_cast<int>(a.size()) - 1; }

  /// Uniform element of degree <= max_degree.
  Elem random(std::mt19937_64& rng, int max_degree) const;

  nlohmann::json to_json(const Elem& a) const;
  Elem from_json(const nlohmann::json& j) const;
  std::string format(const Elem& a) const;
  std::string describe() const;
  nlohmann::json descriptor() const;

 private:
  std::shared_ptr<const FiniteFieldSpec> f_;
  std::string var_;
  int cap_;
};

/// (O/pi^N)[vars]: the pi-torsion-free ring in which universal identities are
/// checked. Elements are polynomials at tracked precision.
class TorsionFreeLift {
 public:
  using Elem = MPoly;

  TorsionFreeLift(SpecPtr spec, std::vector<std::string> vars, int precision);
  static TorsionFreeLift parse(const SpecPtr& spec, const nlohmann::json& j);

  const SpecPtr& spec() const { return spec_; }
  const VarList& vars() const { return vars_; }
  int precision() const { return precision_; }

  Elem zero() const { return MPoly(spec_, vars_, precision_); }
  Elem one() const { return constant(1); }
  Elem constant(std::int64_t c) const;
  Elem variable(int i) const { return MPoly::variable(spec_, vars_, i, precision_); }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem pow(const Elem& a, std::uint64_t e) const { return a.pow(e); }
  bool equal(const Elem& a, const Elem& b) const { return a == b; }
  bool is_zero(const Elem& a) const { return a.is_zero(); }
  Elem from_local(const LocalElem& x) const;

  nlohmann::json to_json(const Elem& a) const { return a.to_json(); }
  Elem from_json(const nlohmann::json& j) const;
  std::string format(const Elem& a) const { return a.format(); }
  std::string describe() const;
  nlohmann::json descriptor() const;

 private:
  SpecPtr spec_;
  VarList vars_;
  int precision_;
};

/// Finite product of rings of one type, componentwise.
template <CoeffRing R>
class ProductRing {
 public:
  using Elem = std::vector<typename R::Elem>;

  explicit ProductRing(std::vector<R> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) throw InputError("product ring needs at least one factor");
  }

  const std::vector<R>& factors() const { return factors_; }

  Elem zero() const { return map0([](const R& r) { return r.zero(); }); }
  Elem one() const { return map0([](const R& r) { return r.one(); }); }
  Elem add(const Elem& a, const Elem& b) const { return map2(a, b, [](const R& r, auto& x, auto& y) { return r.add(x, y); }); }
  Elem mul(const Elem& a, const Elem& b) const { return map2(a, b, [](const R& r, auto& x, auto& y) { return r.mul(x, y); }); }
  Elem neg(const Elem& a) const { return map1(a, [](const R& r, auto& x) { return r.neg(x); }); }
  Elem pow(const Elem& a, std::uint64_t e) const { return map1(a, [e](const R& r, auto& x) { return r.pow(x, e); }); }
  bool equal(const Elem& a, const Elem& b) const {
    for (std::size_t i = 0; i < factors_.size(); ++i)
      if (!factors_[i].equal(a[i], b[i])) return false;
    return true;
  }
  bool is_zero(const Elem& a) const {
    for (std::size_t i = 0; i < factors_.size(); ++i)
      if (!factors_[i].is_zero(a[i])) return false;
    return true;
  }
  Elem from_local(const LocalElem& x) const { return map0([&](const R& r) { return r.from_local(x); }); }
  Elem from_residue(const ResidueElem& t) const
    requires KAlgebra<R>
  {
    return map0([&](const R& r) { return r.from_residue(t); });
  }
  std::uint32_t characteristic() const
    requires KAlgebra<R>
  {
    return factors_.front().characteristic();
  }
  std::optional<Elem> q_root(const Elem& a, std::uint64_t q) const
    requires HasQRoot<R>
  {
    Elem out;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      auto r = factors_[i].q_root(a[i], q);
      if (!r) return std::nullopt;
      out.push_back(*r);
    }
    return out;
  }

  std::uint64_t size() const
    requires Enumerable<R>
  {
    std::uint64_t s = 1;
    for (const auto& f : factors_) s *= f.size();
    return s;
  }
  /// Lexicographic: the first factor is the most significant digit.
  Elem element(std::uint64_t i) const
    requires Enumerable<R>
  {
    Elem out(factors_.size());
    for (std::size_t k = factors_.size(); k-- > 0;) {
      out[k] = factors_[k].element(i % factors_[k].size());
      i /= factors_[k].size();
    }
    return out;
  }

  nlohmann::json to_json(const Elem& a) const {
    nlohmann::json out = nlohmann::json::array();
    for (std::size_t i = 0; i < factors_.size(); ++i) out.push_back(factors_[i].to_json(a[i]));
    return out;
  }
  Elem from_json(const nlohmann::json& j) const {
    if (!j.is_array() || j.size() != factors_.size()) throw InputError("product element needs one entry per factor");
    Elem out;
    for (std::size_t i = 0; i < factors_.size(); ++i) out.push_back(factors_[i].from_json(j[i]));
    return out;
  }
  std::string format(const Elem& a) const {
    std::string s = "(";
    for (std::size_t i = 0; i < factors_.size(); ++i) s += (i ? ", " : "") + factors_[i].format(a[i]);
    return s + ")";
  }
  std::string describe() const {
    std::string s;
    for (std::size_t i = 0; i < factors_.size(); ++i) s += (i ? " x " : "") + factors_[i].describe();
    return s;
  }

 private:
  template <class F>
  Elem map0(F f) const {
    Elem out;
    out.reserve(factors_.size());
    for (const auto& r : factors_) out.push_back(f(r));
    return out;
  }
  template <class F>
  Elem map1(const Elem& a, F f) const {
    Elem out;
    out.reserve(factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i) out.push_back(f(factors_[i], a[i]));
    return out;
  }
  template <class F>
  Elem map2(const Elem& a, const Elem& b, F f) const {
    Elem out;
    out.reserve(factors_.size());
    for (std::size_t i = 0; i < factors_.size(); ++i) out.push_back(f(factors_[i], a[i], b[i]));
    return out;
  }

  std::vector<R> factors_;
};

/// True iff every element of B has a q^(n-1)-th root: the finite-level
/// surrogate for semiperfectness used by the length-n surjectivity checks.
template <class R>
  requires Enumerable<R>
bool semiperfect_level(const R& ring, std::uint64_t q, int n) {
  std::uint64_t e = 1;
  for (int i = 0; i + 1 < n; ++i) e *= q;
  const std::uint64_t size = ring.size();
  std::vector<bool> hit(size, false);
  std::uint64_t count = 0;
  // Images are found by linear search over element codes, which is fine at desk scale.
  std::vector<typename R::Elem> all;
  all.reserve(size);
  for (std::uint64_t i = 0; i < size; ++i) all.push_back(ring.element(i));
  for (std::uint64_t i = 0; i < size; ++i) {
    const auto y = ring.pow(all[i], e);
    for (std::uint64_t j = 0; j < size; ++j)
      if (!hit[j] && ring.equal(all[j], y)) {
        hit[j] = true;
        ++count;
        break;
      }
  }
  return count == size;
}

static_assert(CoeffRing<FiniteField> && KAlgebra<FiniteField> && Enumerable<FiniteField> && HasQRoot<FiniteField>);
static_assert(CoeffRing<QuotientAlgebra> && KAlgebra<QuotientAlgebra> && Enumerable<QuotientAlgebra>);
static_assert(CoeffRing<BoundedPoly> && KAlgebra<BoundedPoly>);
static_assert(CoeffRing<TorsionFreeLift>);
static_assert(CoeffRing<ProductRing<FiniteField>> && Enumerable<ProductRing<FiniteField>>);

}  // namespace wittlab
