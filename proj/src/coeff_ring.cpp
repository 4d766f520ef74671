#include "wittlab/coeff_ring.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "wittlab/util.hpp"

namespace wittlab {
namespace {

struct ParsedTerm {
  std::int64_t coeff = 1;
  std::vector<int> exps;
};

// Integer-coefficient polynomial expressions such as "x^2 + 3*x*y - 1".
std::vector<ParsedTerm> parse_int_poly(const std::string& text, const std::vector<std::string>& vars) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw InputError("empty polynomial expression");
  std::vector<ParsedTerm> out;
  std::size_t i = 0;
  auto read_int = [&](std::int64_t& v) {
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (start == i) return false;
    v = std::stoll(s.substr(start, i - start));
    return true;
  };
  while (i < s.size()) {
    ParsedTerm t;
    t.exps.assign(vars.size(), 0);
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (!out.empty()) {
      throw InputError("expected + or - in '" + text + "'");
    }
    std::int64_t c = 1;
    bool have_factor = read_int(c);
    while (i < s.size() && s[i] != '+' && s[i] != '-') {
      if (s[i] == '*') {
        ++i;
        continue;
      }
      std::size_t best = vars.size();
      std::size_t best_len = 0;
      for (std::size_t v = 0; v < vars.size(); ++v)
        if (s.compare(i, vars[v].size(), vars[v]) == 0 && vars[v].size() > best_len) {
          best = v;
          best_len = vars[v].size();
        }
      if (best == vars.size()) throw InputError("unknown symbol in '" + text + "' at position " + std::to_string(i));
      i += best_len;
      std::int64_t e = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        if (!read_int(e)) throw InputError("missing exponent in '" + text + "'");
      }
      t.exps[best] += static_cast<int>(e);
      have_factor = true;
    }
    if (!have_factor) throw InputError("dangling sign in '" + text + "'");
    t.coeff = sign * c;
    out.push_back(t);
  }
  return out;
}

std::uint64_t log_base(std::uint64_t q, std::uint32_t p) {
  std::uint64_t k = 0;
  while (q > 1) {
    if (q % p != 0) throw InputError("q is not a power of the characteristic");
    q /= p;
    ++k;
  }
  return k;
}

std::string field_name(const FiniteFieldSpec& f) { return "F_" + std::to_string(f.size()); }

}  // namespace

FiniteFieldSpec::Code embed_residue(const ResidueElem& t, const FiniteFieldSpec& target) {
  if (t.field->same_field(target)) return t.code;
  if (t.field->degree() == 1 && t.field->p() == target.p()) return target.from_int(t.code);
  throw MismatchError("no embedding of " + field_name(*t.field) + " into " + field_name(target) +
                      " (only the prime field or an identical modulus)");
}

std::shared_ptr<const FiniteFieldSpec> field_from_json(const nlohmann::json& j) {
  try {
    const auto p = j.at("p").get<std::uint32_t>();
    if (j.contains("modulus")) {
      auto m = j.at("modulus").get<std::vector<std::int64_t>>();
      if (j.contains("d") && j.at("d").get<int>() + 1 != static_cast<int>(m.size()))
        throw InputError("field degree does not match modulus");
      return FiniteFieldSpec::create(p, m);
    }
    return FiniteFieldSpec::with_degree(p, j.value("d", 1));
  } catch (const nlohmann::json::exception& ex) {
    throw InputError(std::string("malformed field descriptor: ") + ex.what());
  }
}

nlohmann::json field_to_json(const FiniteFieldSpec& f) {
  std::vector<std::int64_t> m(f.modulus().begin(), f.modulus().end());
  return {{"p", f.p()}, {"d", f.degree()}, {"modulus", m}};
}

// ---------------------------------------------------------------------------
// FiniteField

std::optional<FiniteField::Elem> FiniteField::q_root(Elem a, std::uint64_t q) const {
  const std::uint64_t k = log_base(q, f_->p()) % f_->degree();
  return f_->frobenius_power(a, (f_->degree() - k) % f_->degree());
}

nlohmann::json FiniteField::to_json(Elem a) const {
  if (f_->degree() == 1) return a;
  auto c = f_->coords(a);
  return c;
}

FiniteField::Elem FiniteField::from_json(const nlohmann::json& j) const {
  if (j.is_number_integer()) return f_->from_int(j.get<std::int64_t>());
  if (j.is_array()) return f_->from_coords(j.get<std::vector<std::int64_t>>());
  if (j.is_string()) {
    const auto terms = parse_int_poly(j.get<std::string>(), {"w"});
    Elem out = 0;
    for (const auto& t : terms) {
      Elem m = f_->from_int(t.coeff);
      if (t.exps[0] > 0) {
        if (f_->degree() < 2) throw InputError("w is not defined in a prime field");
        const std::int64_t w[] = {0, 1};
        m = f_->mul(m, f_->pow(f_->from_coords(w), t.exps[0]));
      }
      out = f_->add(out, m);
    }
    return out;
  }
  throw InputError("field element must be an integer, a coordinate array or a polynomial in w");
}

std::string FiniteField::describe() const { return field_name(*f_); }

nlohmann::json FiniteField::descriptor() const {
  auto j = field_to_json(*f_);
  j["kind"] = "finite_field";
  return j;
}

// ---------------------------------------------------------------------------
// QuotientAlgebra

QuotientAlgebra::QuotientAlgebra(std::shared_ptr<const FiniteFieldSpec> field, std::vector<std::string> vars,
                                 std::vector<std::string> ideal)
    : f_(std::move(field)), vars_(std::move(vars)), ideal_(std::move(ideal)) {
  const int t = static_cast<int>(vars_.size());
  if (t == 0) throw InputError("quotient algebra needs at least one variable");
  bool monomial = true;
  std::vector<std::vector<ParsedTerm>> parsed;
  for (const auto& g : ideal_) {
    parsed.push_back(parse_int_poly(g, vars_));
    if (parsed.back().size() != 1 || f_->from_int(parsed.back()[0].coeff) != 1) monomial = false;
  }
  if (parsed.empty()) throw InputError("ideal must have at least one generator");
  const int dim_limit = 64;

  if (monomial) {
    std::vector<std::vector<int>> mons;
    for (const auto& g : parsed) mons.push_back(g[0].exps);
    std::vector<int> bound(t, -1);
    for (const auto& m : mons) {
      int nz = -1, count = 0;
      for (int i = 0; i < t; ++i)
        if (m[i] > 0) nz = i, ++count;
      if (count == 1) bound[nz] = bound[nz] < 0 ? m[nz] : std::min(bound[nz], m[nz]);
      if (count == 0) throw InputError("ideal contains a unit; the quotient is zero");
    }
    for (int i = 0; i < t; ++i)
      if (bound[i] < 0) throw InputError("quotient by this monomial ideal is infinite-dimensional (no power of " + vars_[i] + ")");
    std::vector<int> e(t, 0);
    auto divisible = [&](const std::vector<int>& x) {
      for (const auto& m : mons) {
        bool div = true;
        for (int i = 0; i < t; ++i) div = div && x[i] >= m[i];
        if (div) return true;
      }
      return false;
    };
    while (true) {
      if (!divisible(e)) basis_.push_back(e);
      int i = t - 1;
      while (i >= 0 && ++e[i] >= bound[i]) e[i--] = 0;
      if (i < 0) break;
    }
    auto before = [](const std::vector<int>& a, const std::vector<int>& b) {
      int da = 0, db = 0;
      for (int x : a) da += x;
      for (int x : b) db += x;
      return da != db ? da < db : a > b;
    };
    std::sort(basis_.begin(), basis_.end(), before);
    if (static_cast<int>(basis_.size()) > dim_limit) throw InputError("quotient algebra dimension too large");
    const int dim = static_cast<int>(basis_.size());
    table_.resize(dim * dim);
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) {
        std::vector<int> s(t);
        for (int i = 0; i < t; ++i) s[i] = basis_[a][i] + basis_[b][i];
        auto it = std::find(basis_.begin(), basis_.end(), s);
        if (it != basis_.end()) table_[a * dim + b].push_back({static_cast<int>(it - basis_.begin()), 1});
      }
  } else {
    if (t != 1 || parsed.size() != 1)
      throw UnsupportedError("only monomial ideals or a single univariate generator are supported");
    // g as F_q coefficients, then made monic.
    int deg = 0;
    for (const auto& term : parsed[0]) deg = std::max(deg, term.exps[0]);
    std::vector<FiniteFieldSpec::Code> g(deg + 1, 0);
    for (const auto& term : parsed[0]) g[term.exps[0]] = f_->add(g[term.exps[0]], f_->from_int(term.coeff));
    while (!g.empty() && g.back() == 0) g.pop_back();
    if (g.size() < 2) throw InputError("ideal generator must have positive degree");
    const auto lead_inv = f_->inverse(g.back());
    for (auto& c : g) c = f_->mul(c, lead_inv);
    deg = static_cast<int>(g.size()) - 1;
    if (deg > dim_limit) throw InputError("quotient algebra dimension too large");
    for (int i = 0; i < deg; ++i) basis_.push_back({i});
    // x^k mod g for k < 2 deg - 1
    std::vector<std::vector<FiniteFieldSpec::Code>> xpow;
    std::vector<FiniteFieldSpec::Code> cur(deg, 0);
    cur[0] = 1;
    for (int k = 0; k < 2 * deg - 1; ++k) {
      xpow.push_back(cur);
      const auto top = cur[deg - 1];
      for (int i = deg - 1; i > 0; --i) cur[i] = cur[i - 1];
      cur[0] = 0;
      for (int i = 0; i < deg; ++i) cur[i] = f_->sub(cur[i], f_->mul(top, g[i]));
    }
    table_.resize(deg * deg);
    for (int a = 0; a < deg; ++a)
      for (int b = 0; b < deg; ++b)
        for (int k = 0; k < deg; ++k)
          if (xpow[a + b][k] != 0) table_[a * deg + b].push_back({k, xpow[a + b][k]});
  }

  size_ = 1;
  for (int i = 0; i < dimension(); ++i) {
    if (size_ > (1ULL << 62) / f_->size()) throw InputError("quotient algebra too large to encode");
    size_ *= f_->size();
  }
  if (size_ <= 256) {
    mul_cache_.resize(size_ * size_);
    add_cache_.resize(size_ * size_);
    for (Elem a = 0; a < size_; ++a)
      for (Elem b = 0; b < size_; ++b) {
        mul_cache_[a * size_ + b] = mul_slow(a, b);
        add_cache_[a * size_ + b] = from_coords([&] {
          auto x = coords(a), y = coords(b);
          for (std::size_t i = 0; i < x.size(); ++i) x[i] = f_->add(x[i], y[i]);
          return x;
        }());
      }
  }
}

QuotientAlgebra QuotientAlgebra::parse(const nlohmann::json& j) {
  try {
    auto field = field_from_json(j);
    std::vector<std::string> vars = j.contains("vars") ? j.at("vars").get<std::vector<std::string>>()
                                                       : std::vector<std::string>{j.value("var", std::string("x"))};
    auto ideal = j.at("ideal").get<std::vector<std::string>>();
    return QuotientAlgebra(field, vars, ideal);
  } catch (const nlohmann::json::exception& ex) {
    throw InputError(std::string("malformed quotient descriptor: ") + ex.what());
  }
}

std::vector<FiniteFieldSpec::Code> QuotientAlgebra::coords(Elem a) const {
  std::vector<FiniteFieldSpec::Code> c(dimension());
  const std::uint64_t q = f_->size();
  for (int i = 0; i < dimension(); ++i) {
    c[i] = static_cast<FiniteFieldSpec::Code>(a % q);
    a /= q;
  }
  return c;
}

QuotientAlgebra::Elem QuotientAlgebra::from_coords(const std::vector<FiniteFieldSpec::Code>& c) const {
  Elem out = 0, scale = 1;
  for (int i = 0; i < dimension(); ++i) {
    out += static_cast<Elem>(i < static_cast<int>(c.size()) ? c[i] : 0) * scale;
    scale *= f_->size();
  }
  return out;
}

QuotientAlgebra::Elem QuotientAlgebra::add(Elem a, Elem b) const {
  if (!add_cache_.empty()) return add_cache_[a * size_ + b];
  auto x = coords(a), y = coords(b);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = f_->add(x[i], y[i]);
  return from_coords(x);
}

QuotientAlgebra::Elem QuotientAlgebra::neg(Elem a) const {
  auto x = coords(a);
  for (auto& c : x) c = f_->neg(c);
  return from_coords(x);
}

QuotientAlgebra::Elem QuotientAlgebra::mul_slow(Elem a, Elem b) const {
  const int dim = dimension();
  auto x = coords(a), y = coords(b);
  std::vector<FiniteFieldSpec::Code> out(dim, 0);
  for (int i = 0; i < dim; ++i) {
    if (!x[i]) continue;
    for (int j = 0; j < dim; ++j) {
      if (!y[j]) continue;
      const auto xy = f_->mul(x[i], y[j]);
      for (const auto& [k, c] : table_[i * dim + j]) out[k] = f_->add(out[k], f_->mul(xy, c));
    }
  }
  return from_coords(out);
}

QuotientAlgebra::Elem QuotientAlgebra::mul(Elem a, Elem b) const {
  if (!mul_cache_.empty()) return mul_cache_[a * size_ + b];
  return mul_slow(a, b);
}

std::optional<QuotientAlgebra::Elem> QuotientAlgebra::q_root(Elem a, std::uint64_t q) const {
  if (size_ > (1ULL << 20)) throw UnsupportedError("q-th root search needs a small algebra");
  for (Elem b = 0; b < size_; ++b)
    if (pow(b, q) == a) return b;
  return std::nullopt;
}

QuotientAlgebra::Elem QuotientAlgebra::variable(int i) const {
  std::vector<int> e(vars_.size(), 0);
  e.at(i) = 1;
  auto it = std::find(basis_.begin(), basis_.end(), e);
  if (it == basis_.end()) return 0;
  std::vector<FiniteFieldSpec::Code> c(dimension(), 0);
  c[it - basis_.begin()] = 1;
  return from_coords(c);
}

nlohmann::json QuotientAlgebra::to_json(Elem a) const {
  nlohmann::json out = nlohmann::json::array();
  for (auto c : coords(a)) out.push_back(f_->degree() == 1 ? nlohmann::json(c) : nlohmann::json(f_->coords(c)));
  return out;
}

QuotientAlgebra::Elem QuotientAlgebra::from_json(const nlohmann::json& j) const {
  if (j.is_number_integer()) return f_->from_int(j.get<std::int64_t>());
  if (j.is_array()) {
    if (static_cast<int>(j.size()) > dimension()) throw InputError("too many coordinates for quotient element");
    std::vector<FiniteFieldSpec::Code> c;
    for (const auto& x : j)
      c.push_back(x.is_array() ? f_->from_coords(x.get<std::vector<std::int64_t>>()) : f_->from_int(x.get<std::int64_t>()));
    return from_coords(c);
  }
  if (j.is_string()) {
    Elem out = 0;
    for (const auto& t : parse_int_poly(j.get<std::string>(), vars_)) {
      Elem m = f_->from_int(t.coeff);
      for (std::size_t v = 0; v < vars_.size(); ++v) m = mul(m, pow(variable(static_cast<int>(v)), t.exps[v]));
      out = add(out, m);
    }
    return out;
  }
  throw InputError("quotient element must be a coordinate array or a polynomial string");
}

std::string QuotientAlgebra::format(Elem a) const {
  auto c = coords(a);
  std::string out;
  for (int i = 0; i < dimension(); ++i) {
    if (!c[i]) continue;
    std::ostringstream mono;
    bool first = true;
    for (std::size_t v = 0; v < vars_.size(); ++v) {
      if (!basis_[i][v]) continue;
      mono << (first ? "" : "*") << vars_[v];
      if (basis_[i][v] > 1) mono << '^' << basis_[i][v];
      first = false;
    }
    std::string coef = f_->format(c[i]);
    std::string term = mono.str().empty() ? coef : (coef == "1" ? mono.str() : coef + "*" + mono.str());
    out += (out.empty() ? "" : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

std::string QuotientAlgebra::describe() const {
  std::string s = field_name(*f_) + "[";
  for (std::size_t i = 0; i < vars_.size(); ++i) s += (i ? "," : "") + vars_[i];
  s += "]/(";
  for (std::size_t i = 0; i < ideal_.size(); ++i) s += (i ? ", " : "") + ideal_[i];
  return s + ")";
}

nlohmann::json QuotientAlgebra::descriptor() const {
  auto j = field_to_json(*f_);
  j["kind"] = "quotient";
  j["vars"] = vars_;
  j["ideal"] = ideal_;
  return j;
}

// ---------------------------------------------------------------------------
// BoundedPoly

BoundedPoly::BoundedPoly(std::shared_ptr<const FiniteFieldSpec> field, std::string var, int cap)
    : f_(std::move(field)), var_(std::move(var)), cap_(cap) {
  if (cap_ < 1) throw InputError("degree cap must be positive");
}

BoundedPoly BoundedPoly::parse(const nlohmann::json& j) {
  try {
    return BoundedPoly(field_from_json(j), j.value("var", std::string("x")), j.value("cap", 64));
  } catch (const nlohmann::json::exception& ex) {
    throw InputError(std::string("malformed bounded_poly descriptor: ") + ex.what());
  }
}

BoundedPoly::Elem BoundedPoly::add(const Elem& a, const Elem& b) const {
  Elem out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = f_->add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

BoundedPoly::Elem BoundedPoly::neg(const Elem& a) const {
  Elem out(a);
  for (auto& c : out) c = f_->neg(c);
  return out;
}

BoundedPoly::Elem BoundedPoly::mul(const Elem& a, const Elem& b) const {
  if (a.empty() || b.empty()) return {};
  const int deg = degree(a) + degree(b);
  if (deg > cap_)
    throw DegreeCapError("product degree " + std::to_string(deg) + " exceeds cap " + std::to_string(cap_));
  Elem out(deg + 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = f_->add(out[i + j], f_->mul(a[i], b[j]));
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

BoundedPoly::Elem BoundedPoly::pow(const Elem& a, std::uint64_t e) const {
  if (e == 0) return one();
  if (a.empty()) return {};
  if (a.size() == 1) return {f_->pow(a[0], e)};
  if (static_cast<std::uint64_t>(degree(a)) * e > static_cast<std::uint64_t>(cap_))
    throw DegreeCapError("power degree exceeds cap " + std::to_string(cap_));
  return ring_pow(*this, a, e);
}

BoundedPoly::Elem BoundedPoly::from_residue(const ResidueElem& t) const {
  const auto c = embed_residue(t, *f_);
  return c ? Elem{c} : Elem{};
}

BoundedPoly::Elem BoundedPoly::random(std::mt19937_64& rng, int max_degree) const {
  Elem out(max_degree + 1);
  for (auto& c : out) c = static_cast<FiniteFieldSpec::Code>(rng() % f_->size());
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

nlohmann::json BoundedPoly::to_json(const Elem& a) const {
  nlohmann::json out = nlohmann::json::array();
  for (auto c : a) out.push_back(f_->degree() == 1 ? nlohmann::json(c) : nlohmann::json(f_->coords(c)));
  return out;
}

BoundedPoly::Elem BoundedPoly::from_json(const nlohmann::json& j) const {
  Elem out;
  if (j.is_number_integer()) {
    out = {f_->from_int(j.get<std::int64_t>())};
  } else if (j.is_array()) {
    for (const auto& x : j)
      out.push_back(x.is_array() ? f_->from_coords(x.get<std::vector<std::int64_t>>()) : f_->from_int(x.get<std::int64_t>()));
  } else if (j.is_string()) {
    for (const auto& t : parse_int_poly(j.get<std::string>(), {var_})) {
      if (static_cast<int>(out.size()) <= t.exps[0]) out.resize(t.exps[0] + 1, 0);
      out[t.exps[0]] = f_->add(out[t.exps[0]], f_->from_int(t.coeff));
    }
  } else {
    throw InputError("polynomial element must be a coefficient array or a string");
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  if (degree(out) > cap_) throw DegreeCapError("input degree exceeds cap");
  return out;
}

std::string BoundedPoly::format(const Elem& a) const {
  if (a.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    std::string coef = f_->format(a[i]);
    std::string mono = i == 0 ? "" : (i == 1 ? var_ : var_ + "^" + std::to_string(i));
    std::string term = mono.empty() ? coef : (coef == "1" ? mono : coef + "*" + mono);
    out += (out.empty() ? "" : " + ") + term;
  }
  return out;
}

std::string BoundedPoly::describe() const {
  return field_name(*f_) + "[" + var_ + "] (deg <= " + std::to_string(cap_) + ")";
}

nlohmann::json BoundedPoly::descriptor() const {
  auto j = field_to_json(*f_);
  j["kind"] = "bounded_poly";
  j["var"] = var_;
  j["cap"] = cap_;
  return j;
}

// ---------------------------------------------------------------------------
// TorsionFreeLift

TorsionFreeLift::TorsionFreeLift(SpecPtr spec, std::vector<std::string> vars, int precision)
    : spec_(std::move(spec)), vars_(make_vars(std::move(vars))), precision_(precision) {
  spec_->check_precision(precision_);
  if (precision_ < 1) throw InputError("lift precision must be positive");
}

TorsionFreeLift TorsionFreeLift::parse(const SpecPtr& spec, const nlohmann::json& j) {
  return TorsionFreeLift(spec, j.value("vars", std::vector<std::string>{}),
                         j.value("precision", spec->default_precision()));
}

TorsionFreeLift::Elem TorsionFreeLift::constant(std::int64_t c) const {
  return MPoly::constant(LocalElem::from_int(spec_, c, precision_), vars_);
}

TorsionFreeLift::Elem TorsionFreeLift::from_local(const LocalElem& x) const {
  if (!x.spec().same_ring(*spec_)) throw MismatchError("structure map from a different ring");
  return MPoly::constant(x.precision() > precision_ ? x.reduced(precision_) : x, vars_);
}

TorsionFreeLift::Elem TorsionFreeLift::from_json(const nlohmann::json& j) const {
  if (j.is_number_integer()) return constant(j.get<std::int64_t>());
  if (j.is_string()) {
    Elem out = zero();
    for (const auto& t : parse_int_poly(j.get<std::string>(), *vars_)) {
      Exps e{};
      for (std::size_t v = 0; v < vars_->size(); ++v) e[v] = static_cast<std::uint16_t>(t.exps[v]);
      out += MPoly::monomial(LocalElem::from_int(spec_, t.coeff, precision_), vars_, e);
    }
    return out;
  }
  if (j.is_object() && j.contains("coords")) return from_local(LocalElem::from_json(spec_, j));
  return MPoly::from_json(spec_, vars_, j);
}

std::string TorsionFreeLift::describe() const {
  std::string s = "(O/pi^" + std::to_string(precision_) + ")[";
  for (std::size_t i = 0; i < vars_->size(); ++i) s += (i ? "," : "") + (*vars_)[i];
  return s + "]";
}

nlohmann::json TorsionFreeLift::descriptor() const {
  return {{"kind", "torsion_free_lift"}, {"vars", *vars_}, {"precision", precision_}};
}

}  // namespace wittlab
