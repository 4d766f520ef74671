#pragma once

// Sparse multivariate polynomials over O / pi^N.
//
// A polynomial carries a single pi-adic precision N: every coefficient is
// known modulo pi^N. Terms are kept in canonical graded-lex order (total
// degree ascending, then lexicographically descending in the variable order),
// so iteration, printing and serialization are deterministic.

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wittlab/local_ring.hpp"

namespace wittlab {

inline constexpr int kMaxVars = 32;
using Exps = std::array<std::uint16_t, kMaxVars>;
using VarList = std::shared_ptr<const std::vector<std::string>>;

VarList make_vars(std::vector<std::string> names);
/// {prefix0, ..., prefix(n-1)}.
std::vector<std::string> indexed_vars(const std::string& prefix, int n);

int total_degree(const Exps& e);
/// Canonical order: true when `a` is printed before `b`.
bool graded_lex_before(const Exps& a, const Exps& b);

struct Term {
  Exps exps{};
  Coords coeff{};
};

class MPoly {
 public:
  MPoly() = default;
  MPoly(SpecPtr spec, VarList vars, int precision);

  static MPoly constant(const LocalElem& c, VarList vars);
  static MPoly variable(SpecPtr spec, VarList vars, int index, int precision);
  static MPoly monomial(const LocalElem& c, VarList vars, const Exps& exps);

  const LocalFieldSpec& spec() const { return *spec_; }
  const SpecPtr& spec_ptr() const { return spec_; }
  const VarList& vars() const { return vars_; }
  int num_vars() const { return static_cast<int>(vars_->size()); }
  int precision() const { return precision_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  /// Minimum coefficient valuation (precision if zero).
  int valuation() const;
  int total_degree() const;
  /// Largest variable index with a positive exponent, or -1.
  int max_var_index() const;
  LocalElem coefficient(const Exps& exps) const;
  LocalElem term_coeff(std::size_t i) const;
  MPoly reduced(int precision) const;

  MPoly operator-() const;
  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend MPoly operator*(const LocalElem& c, const MPoly& a);
  /// Equal after reduction to the smaller precision.
  friend bool operator==(const MPoly& a, const MPoly& b);

  MPoly pow(std::uint64_t e) const;
  /// y with pi^n y = *this. Throws IntegralityError if some coefficient has
  /// valuation < n and PrecisionError if the precision would drop to 0.
  MPoly exact_div_by_pi_power(int n) const;
  /// Substitute values[i] for variable i; all values share spec and variables.
  MPoly compose(const std::vector<MPoly>& values) const;
  /// Same polynomial viewed over a larger variable list containing ours by name.
  MPoly rename_into(const VarList& target) const;

  nlohmann::json to_json() const;
  static MPoly from_json(SpecPtr spec, VarList vars, const nlohmann::json& j);
  std::string format() const;

 private:
  void normalize_sorted();

  SpecPtr spec_;
  VarList vars_;
  int precision_ = 0;
  std::vector<Term> terms_;
};

std::string format_monomial(const Exps& e, const std::vector<std::string>& vars);

}  // namespace wittlab
