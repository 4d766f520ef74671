#pragma once

// Exact arithmetic in O = W(F_q)[pi]/(f_pi) modulo pi^N.
//
// An element is stored through its coordinates c_{i,j} in the basis
// { w^i pi^j : 0 <= i < h, 0 <= j < e } of O over Z_p. A value known modulo
// pi^N is kept canonical: the W(F_q)-coefficient of pi^j is reduced modulo
// p^ceil((N - j) / e). With that normal form, equality of values at a common
// precision is equality of coordinates.

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wittlab/finite_field.hpp"

namespace wittlab {

inline constexpr int kMaxRank = 16;
using Coords = std::array<std::uint64_t, kMaxRank>;

class LocalFieldSpec {
 public:
  /// `unram_modulus`: monic degree-h integer polynomial, low to high.
  /// `eisenstein`: e+1 coefficients of f_pi(T) from T^0 to T^e, each given by
  /// h integers in the w-basis.
  static std::shared_ptr<const LocalFieldSpec> create(std::uint32_t p, int h, int e,
                                                      std::vector<std::int64_t> unram_modulus,
                                                      std::vector<std::vector<std::int64_t>> eisenstein,
                                                      int default_precision);
  static std::shared_ptr<const LocalFieldSpec> from_json(const nlohmann::json& j);
  /// Z_p with pi = p.
  static std::shared_ptr<const LocalFieldSpec> p_adic_integers(std::uint32_t p, int precision);
  /// W(F_q) for the given modulus, pi = p.
  static std::shared_ptr<const LocalFieldSpec> unramified(std::uint32_t p,
                                                          std::vector<std::int64_t> unram_modulus,
                                                          int precision);

  nlohmann::json to_json() const;
  /// SHA-256 of the canonical JSON form.
  const std::string& fingerprint() const { return fingerprint_; }
  bool same_ring(const LocalFieldSpec& other) const;

  std::uint32_t p() const { return p_; }
  int h() const { return h_; }
  int e() const { return e_; }
  std::uint64_t q() const { return q_; }
  int rank() const { return h_ * e_; }
  int default_precision() const { return default_precision_; }
  int max_precision() const { return max_precision_; }
  const std::vector<std::int64_t>& unram_modulus() const { return modulus_input_; }
  const std::vector<std::vector<std::int64_t>>& eisenstein() const { return eisenstein_input_; }
  const std::shared_ptr<const FiniteFieldSpec>& residue_field() const { return residue_field_; }

  /// W(F_q) with the same unramified modulus (the subring O_0).
  std::shared_ptr<const LocalFieldSpec> unramified_subring() const;
  bool is_unramified() const { return e_ == 1; }

  // Raw coordinate arithmetic modulo p^M_max; results are not canonical
  // unless stated otherwise. Exposed for the polynomial layer.
  void check_precision(int N) const;
  void add_raw(Coords& acc, const Coords& b) const;
  void sub_raw(Coords& acc, const Coords& b) const;
  void neg_raw(Coords& a) const;
  Coords mul_raw(const Coords& a, const Coords& b) const;
  void canonicalize(Coords& a, int N) const;
  bool is_zero_raw(const Coords& a) const;
  /// pi-adic valuation of a canonical value at precision N (N if zero).
  int valuation_raw(const Coords& a, int N) const;
  /// a / pi for canonical a at precision N with v(a) >= 1; result canonical at N - 1.
  Coords div_pi_raw(const Coords& a, int N) const;
  std::uint64_t modulus_power(int k) const { return pow_p_[k]; }
  std::uint64_t big_modulus() const { return pow_p_[m_max_]; }

  /// Product in W(F_q) / p^M_max of two h-coordinate blocks.
  void unram_mul(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out) const;

 private:
  LocalFieldSpec() = default;
  void init();

  std::uint32_t p_ = 0;
  int h_ = 0, e_ = 0;
  std::uint64_t q_ = 0;
  int default_precision_ = 0;
  int m_max_ = 0;
  int max_precision_ = 0;
  std::vector<std::uint64_t> pow_p_;
  std::vector<std::int64_t> modulus_input_;
  std::vector<std::vector<std::int64_t>> eisenstein_input_;
  std::vector<std::uint64_t> modulus_;          // h+1 entries mod P
  std::vector<std::uint64_t> eis_;              // e*h entries: T^l coefficient, l < e
  Coords p_over_pi_{};                          // p / pi at maximal precision
  std::shared_ptr<const FiniteFieldSpec> residue_field_;
  std::string fingerprint_;
};

using SpecPtr = std::shared_ptr<const LocalFieldSpec>;

/// An element of O known modulo pi^N.
class LocalElem {
 public:
  LocalElem() = default;
  LocalElem(SpecPtr spec, int precision);

  static LocalElem from_int(SpecPtr spec, std::int64_t v, int precision);
  /// Coordinates grouped by pi-power: `by_pi[j][i]` is the coefficient of w^i pi^j.
  static LocalElem from_coords(SpecPtr spec, const std::vector<std::vector<std::int64_t>>& by_pi,
                               int precision);
  static LocalElem from_raw(SpecPtr spec, const Coords& raw, int precision);
  static LocalElem pi(SpecPtr spec, int precision);
  static LocalElem omega(SpecPtr spec, int precision);
  static LocalElem from_json(SpecPtr spec, const nlohmann::json& j);

  const LocalFieldSpec& spec() const { return *spec_; }
  const SpecPtr& spec_ptr() const { return spec_; }
  int precision() const { return precision_; }
  const Coords& raw() const { return c_; }
  /// Coefficient of w^omega_power pi^pi_power, as a canonical non-negative residue.
  std::uint64_t coord(int pi_power, int omega_power) const;
  /// Coordinates in the symmetric residue system, grouped by pi-power.
  std::vector<std::vector<std::int64_t>> signed_coords() const;

  int valuation() const;
  bool is_zero() const;
  bool is_unit() const { return valuation() == 0 && precision_ > 0; }
  LocalElem reduced(int precision) const;

  LocalElem operator-() const;
  LocalElem& operator+=(const LocalElem& o);
  LocalElem& operator-=(const LocalElem& o);
  friend LocalElem operator+(LocalElem a, const LocalElem& b) { return a += b; }
  friend LocalElem operator-(LocalElem a, const LocalElem& b) { return a -= b; }
  friend LocalElem operator*(const LocalElem& a, const LocalElem& b);
  /// Equality after reduction to the smaller precision.
  friend bool operator==(const LocalElem& a, const LocalElem& b);

  nlohmann::json to_json() const;
  /// Polynomial in w (omega) and pi with signed integer coefficients.
  std::string format() const;
  /// Only the constant coordinate is non-zero.
  bool is_integer() const;

 private:
  SpecPtr spec_;
  Coords c_{};
  int precision_ = 0;
};

/// Precision of a product under the non-archimedean rules, capped by the
/// larger input precision.
int product_precision(int na, int va, int nb, int vb);

LocalElem pow(const LocalElem& x, std::uint64_t e);

/// Inverse of a unit by Newton iteration y <- y(2 - xy) from the residue inverse.
/// Throws NonUnitError on positive valuation, PrecisionError on precision 0.
LocalElem unit_inverse(const LocalElem& x);

/// y with pi^n y = x; precision(y) = precision(x) - n.
LocalElem exact_div_by_pi_power(const LocalElem& x, int n);

/// Class of x modulo pi.
ResidueElem residue(const LocalElem& x);

/// Lift of t with x^q = x, by iterating x -> x^q from the naive lift.
LocalElem teichmuller_lift(const ResidueElem& t, SpecPtr spec, int precision);

/// Witt coordinates (c_0..c_{m-1}) of x in W(F_q) / p^m: x = sum [t_j] p^j and
/// c_j = t_j^(p^j). `x` must live in an unramified spec.
std::vector<ResidueElem> unram_to_witt_coords(const LocalElem& x, int m);
/// Inverse of unram_to_witt_coords (the residue field is perfect).
LocalElem witt_coords_to_unram(std::span<const ResidueElem> coords, SpecPtr unram_spec);

/// Lift of a residue-field element to O with zero higher digits.
LocalElem naive_lift(const ResidueElem& t, SpecPtr spec, int precision);

}  // namespace wittlab
