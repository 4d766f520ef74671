#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace wittlab {

/// The finite field F_{p^d} = F_p[w]/(m(w)).
///
/// Elements are encoded as integers c_0 + c_1 p + ... + c_{d-1} p^{d-1}
/// where c_i is the coefficient of w^i. Fields with at most 256 elements
/// use precomputed addition and multiplication tables.
class FiniteFieldSpec {
 public:
  using Code = std::uint32_t;

  /// `modulus` is monic of degree d, coefficients low to high; it is
  /// reduced mod p and must be irreducible over F_p.
  FiniteFieldSpec(std::uint32_t p, std::span<const std::int64_t> modulus);

  static std::shared_ptr<const FiniteFieldSpec> create(std::uint32_t p,
                                                       std::span<const std::int64_t> modulus);
  static std::shared_ptr<const FiniteFieldSpec> prime(std::uint32_t p);
  /// Lexicographically smallest monic irreducible modulus of degree d.
  static std::shared_ptr<const FiniteFieldSpec> with_degree(std::uint32_t p, int d);

  std::uint32_t p() const { return p_; }
  int degree() const { return d_; }
  std::uint64_t size() const { return size_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  /// Same prime and same modulus.
  bool same_field(const FiniteFieldSpec& other) const;

  Code zero() const { return 0; }
  Code one() const { return 1; }
  Code from_int(std::int64_t v) const;
  Code from_coords(std::span<const std::int64_t> coords) const;
  std::vector<std::uint32_t> coords(Code x) const;

  Code add(Code a, Code b) const;
  Code neg(Code a) const;
  Code sub(Code a, Code b) const { return add(a, neg(b)); }
  Code mul(Code a, Code b) const;
  Code pow(Code a, std::uint64_t e) const;
  /// a^(p^k) for arbitrary k; the exponent is reduced using a^(p^d) = a.
  Code frobenius_power(Code a, std::uint64_t k) const;
  Code inverse(Code a) const;
  /// Unique p-th root: a^(p^(d-1)).
  Code p_root(Code a) const;
  /// Unique (p^h)-th root.
  Code q_root(Code a, int h) const;

  std::string format(Code x) const;

 private:
  Code mul_slow(Code a, Code b) const;
  Code add_slow(Code a, Code b) const;

  std::uint32_t p_;
  int d_;
  std::uint64_t size_;
  std::vector<std::uint32_t> modulus_;  // length d+1, monic
  std::vector<Code> add_table_;
  std::vector<Code> mul_table_;
};

/// True iff the monic polynomial (coefficients mod p, low to high) is
/// irreducible over F_p. Trial division by all monic polynomials of degree
/// at most deg/2, which is adequate at desk scale.
bool is_irreducible_mod_p(std::uint32_t p, std::span<const std::uint32_t> monic);

/// Element of a residue field together with its field.
struct ResidueElem {
  std::shared_ptr<const FiniteFieldSpec> field;
  FiniteFieldSpec::Code code = 0;

  bool operator==(const ResidueElem& o) const {
    return field->same_field(*o.field) && code == o.code;
  }
};

ResidueElem residue_add(const ResidueElem& a, const ResidueElem& b);
ResidueElem residue_mul(const ResidueElem& a, const ResidueElem& b);
ResidueElem residue_pow(const ResidueElem& a, std::uint64_t e);
ResidueElem residue_p_root(const ResidueElem& a);

}  // namespace wittlab
