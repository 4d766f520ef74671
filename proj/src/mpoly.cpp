#include "wittlab/mpoly.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <string_view>
#include <unordered_map>

#include "wittlab/errors.hpp"

namespace wittlab {
namespace {

struct ExpsHash {
  std::size_t operator()(const Exps& e) const {
    return std::hash<std::string_view>{}(
        std::string_view(reinterpret_cast<const char*>(e.data()), sizeof(std::uint16_t) * kMaxVars));
  }
};

using Accumulator = std::unordered_map<Exps, Coords, ExpsHash>;

void require_compatible(const MPoly& a, const MPoly& b) {
  if (!a.spec().same_ring(b.spec())) throw MismatchError("polynomials over different rings");
  if (a.vars() != b.vars() && *a.vars() != *b.vars()) throw MismatchError("polynomials in different variables");
}

Exps add_exps(const Exps& a, const Exps& b) {
  Exps r;
  for (int i = 0; i < kMaxVars; ++i) {
    const unsigned s = static_cast<unsigned>(a[i]) + b[i];
    if (s > 0xFFFF) throw PrecisionError("exponent overflow in polynomial product");
    r[i] = static_cast<std::uint16_t>(s);
  }
  return r;
}

}  // namespace

VarList make_vars(std::vector<std::string> names) {
  if (names.size() > static_cast<std::size_t>(kMaxVars))
    throw InputError("too many polynomial variables (max " + std::to_string(kMaxVars) + ")");
  return std::make_shared<const std::vector<std::string>>(std::move(names));
}

std::vector<std::string> indexed_vars(const std::string& prefix, int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

int total_degree(const Exps& e) {
  int d = 0;
  for (auto x : e) d += x;
  return d;
}

bool graded_lex_before(const Exps& a, const Exps& b) {
  const int da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  return a > b;
}

MPoly::MPoly(SpecPtr spec, VarList vars, int precision)
    : spec_(std::move(spec)), vars_(std::move(vars)), precision_(precision) {
  spec_->check_precision(precision);
}

MPoly MPoly::constant(const LocalElem& c, VarList vars) { return monomial(c, std::move(vars), Exps{}); }

MPoly MPoly::variable(SpecPtr spec, VarList vars, int index, int precision) {
  if (index < 0 || index >= static_cast<int>(vars->size())) throw InputError("variable index out of range");
  Exps e{};
  e[index] = 1;
  return monomial(LocalElem::from_int(spec, 1, precision), std::move(vars), e);
}

MPoly MPoly::monomial(const LocalElem& c, VarList vars, const Exps& exps) {
  MPoly p(c.spec_ptr(), std::move(vars), c.precision());
  if (!c.is_zero()) p.terms_.push_back({exps, c.raw()});
  return p;
}

void MPoly::normalize_sorted() {
  std::vector<Term> kept;
  kept.reserve(terms_.size());
  for (auto& t : terms_) {
    spec_->canonicalize(t.coeff, precision_);
    if (!spec_->is_zero_raw(t.coeff)) kept.push_back(t);
  }
  terms_ = std::move(kept);
}

int MPoly::valuation() const {
  int v = precision_;
  for (const auto& t : terms_) v = std::min(v, spec_->valuation_raw(t.coeff, precision_));
  return v;
}

int MPoly::total_degree() const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, wittlab::total_degree(t.exps));
  return d;
}

int MPoly::max_var_index() const {
  int m = -1;
  for (const auto& t : terms_)
    for (int i = kMaxVars - 1; i > m; --i)
      if (t.exps[i]) {
        m = i;
        break;
      }
  return m;
}

LocalElem MPoly::coefficient(const Exps& exps) const {
  for (const auto& t : terms_)
    if (t.exps == exps) return LocalElem::from_raw(spec_, t.coeff, precision_);
  return LocalElem(spec_, precision_);
}

LocalElem MPoly::term_coeff(std::size_t i) const { return LocalElem::from_raw(spec_, terms_[i].coeff, precision_); }

MPoly MPoly::reduced(int precision) const {
  if (precision > precision_) throw PrecisionError("cannot raise polynomial precision");
  MPoly p = *this;
  p.precision_ = precision;
  p.normalize_sorted();
  return p;
}

MPoly MPoly::operator-() const {
  MPoly p = *this;
  for (auto& t : p.terms_) spec_->neg_raw(t.coeff);
  p.normalize_sorted();
  return p;
}

MPoly& MPoly::operator+=(const MPoly& o) {
  require_compatible(*this, o);
  precision_ = std::min(precision_, o.precision_);
  std::vector<Term> merged;
  merged.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && graded_lex_before(terms_[i].exps, o.terms_[j].exps))) {
      merged.push_back(terms_[i++]);
    } else if (i == terms_.size() || graded_lex_before(o.terms_[j].exps, terms_[i].exps)) {
      merged.push_back(o.terms_[j++]);
    } else {
      Term t = terms_[i++];
      spec_->add_raw(t.coeff, o.terms_[j++].coeff);
      merged.push_back(t);
    }
  }
  terms_ = std::move(merged);
  normalize_sorted();
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) { return *this += -o; }

MPoly operator*(const MPoly& a, const MPoly& b) {
  require_compatible(a, b);
  const auto& s = a.spec();
  const int n = product_precision(a.precision_, a.valuation(), b.precision_, b.valuation());
  MPoly out(a.spec_, a.vars_, n);
  if (a.is_zero() || b.is_zero()) return out;
  Accumulator acc;
  acc.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) {
      Coords c = s.mul_raw(x.coeff, y.coeff);
      auto [it, fresh] = acc.try_emplace(add_exps(x.exps, y.exps), c);
      if (!fresh) s.add_raw(it->second, c);
    }
  out.terms_.reserve(acc.size());
  for (auto& [e, c] : acc) out.terms_.push_back({e, c});
  std::sort(out.terms_.begin(), out.terms_.end(),
            [](const Term& l, const Term& r) { return graded_lex_before(l.exps, r.exps); });
  out.normalize_sorted();
  return out;
}

MPoly operator*(const LocalElem& c, const MPoly& a) { return MPoly::constant(c, a.vars_) * a; }

bool operator==(const MPoly& a, const MPoly& b) {
  require_compatible(a, b);
  const int n = std::min(a.precision_, b.precision_);
  const MPoly x = a.reduced(n), y = b.reduced(n);
  if (x.terms_.size() != y.terms_.size()) return false;
  for (std::size_t i = 0; i < x.terms_.size(); ++i)
    if (x.terms_[i].exps != y.terms_[i].exps || x.terms_[i].coeff != y.terms_[i].coeff) return false;
  return true;
}

MPoly MPoly::pow(std::uint64_t e) const {
  MPoly result = constant(LocalElem::from_int(spec_, 1, precision_), vars_);
  MPoly base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

MPoly MPoly::exact_div_by_pi_power(int n) const {
  if (n == 0) return *this;
  if (precision_ - n <= 0)
    throw PrecisionError("division by pi^" + std::to_string(n) + " exhausts polynomial precision " +
                         std::to_string(precision_));
  MPoly out(spec_, vars_, precision_ - n);
  out.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    const int v = spec_->valuation_raw(t.coeff, precision_);
    if (v < n)
      throw IntegralityError("non-exact division by pi^" + std::to_string(n) + " at monomial " +
                             format_monomial(t.exps, *vars_) + " (valuation " + std::to_string(v) + ")");
    Coords c = t.coeff;
    int N = precision_;
    for (int k = 0; k < n; ++k) c = spec_->div_pi_raw(c, N--);
    out.terms_.push_back({t.exps, c});
  }
  out.normalize_sorted();
  return out;
}

MPoly MPoly::compose(const std::vector<MPoly>& values) const {
  if (values.size() < vars_->size()) throw InputError("compose: too few substitution values");
  if (values.empty()) return *this;
  const VarList& out_vars = values.front().vars();
  MPoly result(spec_, out_vars, precision_);
  for (const auto& v : values) result.precision_ = std::min(result.precision_, v.precision());
  std::map<std::pair<int, int>, MPoly> powers;
  auto power = [&](int i, int e) -> const MPoly& {
    auto it = powers.find({i, e});
    if (it == powers.end()) it = powers.emplace(std::make_pair(i, e), values[i].pow(e)).first;
    return it->second;
  };
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    MPoly m = constant(term_coeff(k), out_vars);
    for (int i = 0; i < num_vars(); ++i)
      if (terms_[k].exps[i]) m = m * power(i, terms_[k].exps[i]);
    result += m;
  }
  return result;
}

MPoly MPoly::rename_into(const VarList& target) const {
  std::vector<int> map(num_vars(), -1);
  for (int i = 0; i < num_vars(); ++i) {
    auto it = std::find(target->begin(), target->end(), (*vars_)[i]);
    if (it != target->end()) map[i] = static_cast<int>(it - target->begin());
  }
  MPoly out(spec_, target, precision_);
  for (const auto& t : terms_) {
    Exps e{};
    for (int i = 0; i < num_vars(); ++i) {
      if (!t.exps[i]) continue;
      if (map[i] < 0) throw InputError("variable " + (*vars_)[i] + " missing from target variable list");
      e[map[i]] = t.exps[i];
    }
    out.terms_.push_back({e, t.coeff});
  }
  std::sort(out.terms_.begin(), out.terms_.end(),
            [](const Term& l, const Term& r) { return graded_lex_before(l.exps, r.exps); });
  return out;
}

nlohmann::json MPoly::to_json() const {
  nlohmann::json monos = nlohmann::json::array();
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    nlohmann::json exps = nlohmann::json::object();
    for (int i = 0; i < num_vars(); ++i)
      if (terms_[k].exps[i]) exps[(*vars_)[i]] = terms_[k].exps[i];
    monos.push_back({{"exps", exps}, {"coeff", term_coeff(k).to_json()}});
  }
  return {{"prec", precision_}, {"monomials", monos}};
}

MPoly MPoly::from_json(SpecPtr spec, VarList vars, const nlohmann::json& j) {
  try {
    MPoly p(spec, vars, j.at("prec").get<int>());
    for (const auto& m : j.at("monomials")) {
      Exps e{};
      for (const auto& [name, val] : m.at("exps").items()) {
        auto it = std::find(vars->begin(), vars->end(), name);
        if (it == vars->end()) throw InputError("unknown variable " + name);
        e[it - vars->begin()] = val.get<std::uint16_t>();
      }
      const LocalElem c = LocalElem::from_json(spec, m.at("coeff"));
      p += monomial(c.precision() >= p.precision_ ? c.reduced(p.precision_) : c, vars, e);
    }
    return p;
  } catch (const nlohmann::json::exception& ex) {
    throw InputError(std::string("malformed polynomial JSON: ") + ex.what());
  }
}

std::string format_monomial(const Exps& e, const std::vector<std::string>& vars) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (!e[i]) continue;
    os << (first ? "" : "*") << vars[i];
    if (e[i] > 1) os << '^' << e[i];
    first = false;
  }
  return first ? "1" : os.str();
}

std::string MPoly::format() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    const std::string mono = format_monomial(terms_[k].exps, *vars_);
    const bool is_one = mono == "1";
    const LocalElem coeff = term_coeff(k);
    if (coeff.is_integer()) {
      std::int64_t c = coeff.signed_coords()[0][0];
      if (k == 0) {
        if (c < 0) os << '-';
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      c = c < 0 ? -c : c;
      if (c != 1 || is_one) {
        os << c;
        if (!is_one) os << '*';
      }
      if (!is_one) os << mono;
    } else {
      if (k) os << " + ";
      os << '(' << coeff.format() << ')';
      if (!is_one) os << '*' << mono;
    }
  }
  return os.str();
}

}  // namespace wittlab
