#include "wittlab/local_ring.hpp"

#include <algorithm>
#include <sstream>

#include "wittlab/errors.hpp"
#include "wittlab/util.hpp"

namespace wittlab {
namespace {

std::uint64_t reduce_signed(std::int64_t v, std::uint64_t m) {
  std::int64_t r = static_cast<std::int64_t>(static_cast<__int128>(v) % static_cast<__int128>(m));
  if (r < 0) r += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(r);
}

int p_valuation(std::uint64_t c, std::uint32_t p) {
  int v = 0;
  while (c % p == 0) {
    c /= p;
    ++v;
  }
  return v;
}

int ceil_div(int a, int b) { return a <= 0 ? 0 : (a + b - 1) / b; }

void require_same_spec(const LocalElem& a, const LocalElem& b) {
  if (&a.spec() != &b.spec() && !a.spec().same_ring(b.spec()))
    throw MismatchError("local elements from different rings");
}

}  // namespace

// ---------------------------------------------------------------------------
// LocalFieldSpec

SpecPtr LocalFieldSpec::create(std::uint32_t p, int h, int e, std::vector<std::int64_t> unram_modulus,
                               std::vector<std::vector<std::int64_t>> eisenstein, int default_precision) {
  if (h < 1 || e < 1) throw InputError("h and e must be positive");
  if (h * e > kMaxRank) throw InputError("absolute degree e*h exceeds " + std::to_string(kMaxRank));
  if (static_cast<int>(unram_modulus.size()) != h + 1)
    throw InputError("unram_modulus must have h+1 coefficients");
  if (unram_modulus.back() != 1) throw InputError("unram_modulus must be monic");
  if (static_cast<int>(eisenstein.size()) != e + 1)
    throw InputError("eisenstein must have e+1 coefficients");
  for (auto& c : eisenstein) {
    if (static_cast<int>(c.size()) > h) throw InputError("eisenstein coefficient has more than h coordinates");
    c.resize(h, 0);
  }
  if (eisenstein.back()[0] != 1 ||
      std::any_of(eisenstein.back().begin() + 1, eisenstein.back().end(), [](auto v) { return v != 0; }))
    throw InputError("eisenstein polynomial must be monic");
  const auto sp = static_cast<std::int64_t>(p);
  for (int l = 0; l < e; ++l)
    for (auto v : eisenstein[l])
      if (v % sp != 0) throw InputError("eisenstein: non-leading coefficient not divisible by p");
  bool unit_part = false;
  for (auto v : eisenstein[0])
    if ((v / sp) % sp != 0) unit_part = true;
  if (!unit_part) throw InputError("eisenstein: constant term must have p-valuation exactly 1");
  if (default_precision < 1) throw InputError("precision must be positive");

  std::shared_ptr<LocalFieldSpec> s(new LocalFieldSpec());
  s->p_ = p;
  s->h_ = h;
  s->e_ = e;
  s->default_precision_ = default_precision;
  s->modulus_input_ = std::move(unram_modulus);
  s->eisenstein_input_ = std::move(eisenstein);
  s->init();
  if (default_precision > s->max_precision_)
    throw InputError("precision exceeds the 64-bit coordinate budget (max " +
                     std::to_string(s->max_precision_) + ")");
  return s;
}

void LocalFieldSpec::init() {
  residue_field_ = FiniteFieldSpec::create(p_, modulus_input_);
  q_ = residue_field_->size();
  m_max_ = 0;
  pow_p_ = {1};
  while (pow_p_.back() <= ((1ULL << 62) - 1) / p_) {
    pow_p_.push_back(pow_p_.back() * p_);
    ++m_max_;
  }
  max_precision_ = e_ * (m_max_ - 2);
  const std::uint64_t P = pow_p_[m_max_];
  modulus_.clear();
  for (auto v : modulus_input_) modulus_.push_back(reduce_signed(v, P));
  eis_.assign(static_cast<std::size_t>(e_) * h_, 0);
  for (int l = 0; l < e_; ++l)
    for (int i = 0; i < h_; ++i) eis_[l * h_ + i] = reduce_signed(eisenstein_input_[l][i], P);

  // u0 = a_0 / p, exact on the integer inputs.
  std::vector<std::uint64_t> u0(h_);
  for (int i = 0; i < h_; ++i) u0[i] = reduce_signed(eisenstein_input_[0][i] / static_cast<std::int64_t>(p_), P);
  // Newton inverse of u0 in W(F_q)/P.
  std::vector<std::uint64_t> inv(h_, 0);
  {
    FiniteFieldSpec::Code r = 0, scale = 1;
    for (int i = 0; i < h_; ++i) {
      r += static_cast<FiniteFieldSpec::Code>(u0[i] % p_) * scale;
      scale *= p_;
    }
    auto rc = residue_field_->coords(residue_field_->inverse(r));
    for (int i = 0; i < h_; ++i) inv[i] = rc[i];
    std::vector<std::uint64_t> t(h_), two_minus(h_);
    for (int it = 0; it < 7; ++it) {
      unram_mul(u0.data(), inv.data(), t.data());
      for (int i = 0; i < h_; ++i) two_minus[i] = submod(i == 0 ? 2 % P : 0, t[i], P);
      unram_mul(inv.data(), two_minus.data(), t.data());
      inv = t;
    }
  }
  // p/pi = -u0^{-1} (pi^{e-1} + sum_{l=1}^{e-1} a_l pi^{l-1}).
  Coords s{};
  s[(e_ - 1) * h_] = 1;
  for (int l = 1; l < e_; ++l)
    for (int i = 0; i < h_; ++i) s[(l - 1) * h_ + i] = addmod(s[(l - 1) * h_ + i], eis_[l * h_ + i], P);
  std::vector<std::uint64_t> neg_inv(h_);
  for (int i = 0; i < h_; ++i) neg_inv[i] = submod(0, inv[i], P);
  p_over_pi_ = Coords{};
  for (int j = 0; j < e_; ++j) unram_mul(&s[j * h_], neg_inv.data(), &p_over_pi_[j * h_]);
  canonicalize(p_over_pi_, max_precision_);

  fingerprint_ = sha256_hex(to_json().dump());
}

SpecPtr LocalFieldSpec::from_json(const nlohmann::json& j) {
  try {
    const auto p = j.at("p").get<std::uint32_t>();
    const int h = j.value("h", 1);
    const int e = j.value("e", 1);
    auto modulus = j.contains("unram_modulus") ? j.at("unram_modulus").get<std::vector<std::int64_t>>()
                                               : std::vector<std::int64_t>{0, 1};
    std::vector<std::vector<std::int64_t>> eis;
    if (j.contains("eisenstein")) {
      for (const auto& c : j.at("eisenstein")) {
        if (c.is_number_integer())
          eis.push_back({c.get<std::int64_t>()});
        else
          eis.push_back(c.get<std::vector<std::int64_t>>());
      }
    } else {
      if (e != 1) throw InputError("eisenstein polynomial required when e > 1");
      eis = {{-static_cast<std::int64_t>(p)}, {1}};
    }
    const int precision = j.value("precision", 16);
    return create(p, h, e, std::move(modulus), std::move(eis), precision);
  } catch (const nlohmann::json::exception& ex) {
    throw InputError(std::string("malformed spec JSON: ") + ex.what());
  }
}

SpecPtr LocalFieldSpec::p_adic_integers(std::uint32_t p, int precision) {
  return create(p, 1, 1, {0, 1}, {{-static_cast<std::int64_t>(p)}, {1}}, precision);
}

SpecPtr LocalFieldSpec::unramified(std::uint32_t p, std::vector<std::int64_t> unram_modulus, int precision) {
  const int h = static_cast<int>(unram_modulus.size()) - 1;
  std::vector<std::int64_t> a0(h, 0), one(h, 0);
  a0[0] = -static_cast<std::int64_t>(p);
  one[0] = 1;
  return create(p, h, 1, std::move(unram_modulus), {a0, one}, precision);
}

SpecPtr LocalFieldSpec::unramified_subring() const {
  return unramified(p_, modulus_input_, std::max(1, (default_precision_ + e_ - 1) / e_));
}

nlohmann::json LocalFieldSpec::to_json() const {
  return {{"p", p_},
          {"h", h_},
          {"e", e_},
          {"unram_modulus", modulus_input_},
          {"eisenstein", eisenstein_input_}};
}

bool LocalFieldSpec::same_ring(const LocalFieldSpec& other) const {
  return this == &other || fingerprint_ == other.fingerprint_;
}

void LocalFieldSpec::check_precision(int N) const {
  if (N < 0) throw PrecisionError("negative precision");
  if (N > max_precision_)
    throw PrecisionError("precision " + std::to_string(N) + " exceeds coordinate budget " +
                         std::to_string(max_precision_));
}

void LocalFieldSpec::unram_mul(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out) const {
  const std::uint64_t P = pow_p_[m_max_];
  std::array<std::uint64_t, 2 * kMaxRank> prod{};
  for (int i = 0; i < h_; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < h_; ++j) prod[i + j] = addmod(prod[i + j], mulmod(a[i], b[j], P), P);
  }
  for (int k = 2 * h_ - 2; k >= h_; --k) {
    const std::uint64_t t = prod[k];
    if (t == 0) continue;
    for (int i = 0; i < h_; ++i) prod[k - h_ + i] = submod(prod[k - h_ + i], mulmod(t, modulus_[i], P), P);
  }
  for (int i = 0; i < h_; ++i) out[i] = prod[i];
}

void LocalFieldSpec::add_raw(Coords& acc, const Coords& b) const {
  const std::uint64_t P = pow_p_[m_max_];
  for (int k = 0; k < rank(); ++k) acc[k] = addmod(acc[k], b[k], P);
}

void LocalFieldSpec::sub_raw(Coords& acc, const Coords& b) const {
  const std::uint64_t P = pow_p_[m_max_];
  for (int k = 0; k < rank(); ++k) acc[k] = submod(acc[k], b[k], P);
}

void LocalFieldSpec::neg_raw(Coords& a) const {
  const std::uint64_t P = pow_p_[m_max_];
  for (int k = 0; k < rank(); ++k) a[k] = submod(0, a[k], P);
}

Coords LocalFieldSpec::mul_raw(const Coords& a, const Coords& b) const {
  const std::uint64_t P = pow_p_[m_max_];
  if (e_ == 1 && h_ == 1) {
    Coords out{};
    out[0] = mulmod(a[0], b[0], P);
    return out;
  }
  std::array<std::uint64_t, 2 * kMaxRank * 2> prod{};
  std::array<std::uint64_t, kMaxRank> tmp{};
  for (int j = 0; j < e_; ++j) {
    bool zero = true;
    for (int i = 0; i < h_; ++i) zero = zero && a[j * h_ + i] == 0;
    if (zero) continue;
    for (int k = 0; k < e_; ++k) {
      unram_mul(&a[j * h_], &b[k * h_], tmp.data());
      for (int i = 0; i < h_; ++i) prod[(j + k) * h_ + i] = addmod(prod[(j + k) * h_ + i], tmp[i], P);
    }
  }
  // pi^e = -(a_{e-1} pi^{e-1} + ... + a_0)
  for (int t = 2 * e_ - 2; t >= e_; --t) {
    const std::uint64_t* top = &prod[t * h_];
    bool zero = true;
    for (int i = 0; i < h_; ++i) zero = zero && top[i] == 0;
    if (zero) continue;
    for (int l = 0; l < e_; ++l) {
      unram_mul(top, &eis_[l * h_], tmp.data());
      for (int i = 0; i < h_; ++i) prod[(t - e_ + l) * h_ + i] = submod(prod[(t - e_ + l) * h_ + i], tmp[i], P);
    }
  }
  Coords out{};
  for (int k = 0; k < rank(); ++k) out[k] = prod[k];
  return out;
}

void LocalFieldSpec::canonicalize(Coords& a, int N) const {
  for (int j = 0; j < e_; ++j) {
    const int k = std::min(ceil_div(N - j, e_), m_max_);
    const std::uint64_t m = pow_p_[k];
    for (int i = 0; i < h_; ++i) a[j * h_ + i] %= m;
  }
  for (int k = rank(); k < kMaxRank; ++k) a[k] = 0;
}

bool LocalFieldSpec::is_zero_raw(const Coords& a) const {
  for (int k = 0; k < rank(); ++k)
    if (a[k] != 0) return false;
  return true;
}

int LocalFieldSpec::valuation_raw(const Coords& a, int N) const {
  int v = N;
  for (int j = 0; j < e_; ++j)
    for (int i = 0; i < h_; ++i) {
      const std::uint64_t c = a[j * h_ + i];
      if (c != 0) v = std::min(v, e_ * p_valuation(c, p_) + j);
    }
  return v;
}

Coords LocalFieldSpec::div_pi_raw(const Coords& a, int N) const {
  Coords y{};
  for (int j = 1; j < e_; ++j)
    for (int i = 0; i < h_; ++i) y[(j - 1) * h_ + i] = a[j * h_ + i];
  Coords t{};
  bool any = false;
  for (int i = 0; i < h_; ++i) {
    if (a[i] % p_ != 0) throw ValuationError("division by pi: element is a unit");
    t[i] = a[i] / p_;
    any = any || t[i] != 0;
  }
  if (any) add_raw(y, mul_raw(t, p_over_pi_));
  canonicalize(y, N - 1);
  return y;
}

// ---------------------------------------------------------------------------
// LocalElem

LocalElem::LocalElem(SpecPtr spec, int precision) : spec_(std::move(spec)), precision_(precision) {
  spec_->check_precision(precision);
}

LocalElem LocalElem::from_int(SpecPtr spec, std::int64_t v, int precision) {
  LocalElem x(std::move(spec), precision);
  x.c_[0] = reduce_signed(v, x.spec_->big_modulus());
  x.spec_->canonicalize(x.c_, precision);
  return x;
}

LocalElem LocalElem::from_coords(SpecPtr spec, const std::vector<std::vector<std::int64_t>>& by_pi,
                                 int precision) {
  LocalElem x(std::move(spec), precision);
  const auto& s = *x.spec_;
  if (static_cast<int>(by_pi.size()) > s.e()) throw InputError("too many pi-power blocks");
  for (std::size_t j = 0; j < by_pi.size(); ++j) {
    if (static_cast<int>(by_pi[j].size()) > s.h()) throw InputError("too many w-coordinates");
    for (std::size_t i = 0; i < by_pi[j].size(); ++i)
      x.c_[j * s.h() + i] = reduce_signed(by_pi[j][i], s.big_modulus());
  }
  s.canonicalize(x.c_, precision);
  return x;
}

LocalElem LocalElem::from_raw(SpecPtr spec, const Coords& raw, int precision) {
  LocalElem x(std::move(spec), precision);
  x.c_ = raw;
  x.spec_->canonicalize(x.c_, precision);
  return x;
}

LocalElem LocalElem::pi(SpecPtr spec, int precision) {
  LocalElem x(std::move(spec), precision);
  const auto& s = *x.spec_;
  if (s.e() > 1) {
    x.c_[s.h()] = 1;
  } else {
    // pi = -a_0 when e = 1
    for (int i = 0; i < s.h(); ++i) x.c_[i] = reduce_signed(-s.eisenstein()[0][i], s.big_modulus());
  }
  s.canonicalize(x.c_, precision);
  return x;
}

LocalElem LocalElem::omega(SpecPtr spec, int precision) {
  LocalElem x(std::move(spec), precision);
  if (x.spec_->h() < 2) throw InputError("omega requires h >= 2");
  x.c_[1] = 1;
  x.spec_->canonicalize(x.c_, precision);
  return x;
}

LocalElem LocalElem::from_json(SpecPtr spec, const nlohmann::json& j) {
  try {
    if (j.is_number_integer()) return from_int(spec, j.get<std::int64_t>(), spec->default_precision());
    const int prec = j.value("prec", spec->default_precision());
    const auto& c = j.at("coords");
    if (c.is_number_integer()) return from_int(spec, c.get<std::int64_t>(), prec);
    std::vector<std::vector<std::int64_t>> by_pi;
    for (const auto& blk : c) {
      if (blk.is_number_integer())
        by_pi.push_back({blk.get<std::int64_t>()});
      else
        by_pi.push_back(blk.get<std::vector<std::int64_t>>());
    }
    return from_coords(spec, by_pi, prec);
  } catch (const nlohmann::json::exception& ex) {
    throw InputError(std::string("malformed local element: ") + ex.what());
  }
}

std::uint64_t LocalElem::coord(int pi_power, int omega_power) const {
  return c_[pi_power * spec_->h() + omega_power];
}

std::vector<std::vector<std::int64_t>> LocalElem::signed_coords() const {
  const auto& s = *spec_;
  std::vector<std::vector<std::int64_t>> out(s.e(), std::vector<std::int64_t>(s.h(), 0));
  for (int j = 0; j < s.e(); ++j) {
    const int k = std::min(ceil_div(precision_ - j, s.e()), s.max_precision());
    const std::uint64_t m = s.modulus_power(std::min(k, 62));
    for (int i = 0; i < s.h(); ++i) {
      const std::uint64_t c = c_[j * s.h() + i];
      out[j][i] = c > m / 2 ? -static_cast<std::int64_t>(m - c) : static_cast<std::int64_t>(c);
    }
  }
  return out;
}

int LocalElem::valuation() const { return spec_->valuation_raw(c_, precision_); }

bool LocalElem::is_zero() const { return spec_->is_zero_raw(c_); }

LocalElem LocalElem::reduced(int precision) const {
  if (precision > precision_) throw PrecisionError("cannot raise precision");
  LocalElem x = *this;
  x.precision_ = precision;
  spec_->canonicalize(x.c_, precision);
  return x;
}

LocalElem LocalElem::operator-() const {
  LocalElem x = *this;
  spec_->neg_raw(x.c_);
  spec_->canonicalize(x.c_, precision_);
  return x;
}

LocalElem& LocalElem::operator+=(const LocalElem& o) {
  require_same_spec(*this, o);
  precision_ = std::min(precision_, o.precision_);
  spec_->add_raw(c_, o.c_);
  spec_->canonicalize(c_, precision_);
  return *this;
}

LocalElem& LocalElem::operator-=(const LocalElem& o) {
  require_same_spec(*this, o);
  precision_ = std::min(precision_, o.precision_);
  spec_->sub_raw(c_, o.c_);
  spec_->canonicalize(c_, precision_);
  return *this;
}

int product_precision(int na, int va, int nb, int vb) {
  return std::min({na + vb, nb + va, std::max(na, nb)});
}

LocalElem operator*(const LocalElem& a, const LocalElem& b) {
  require_same_spec(a, b);
  const int n = product_precision(a.precision_, a.valuation(), b.precision_, b.valuation());
  LocalElem x(a.spec_, n);
  x.c_ = a.spec_->mul_raw(a.c_, b.c_);
  a.spec_->canonicalize(x.c_, n);
  return x;
}

bool operator==(const LocalElem& a, const LocalElem& b) {
  require_same_spec(a, b);
  const int n = std::min(a.precision_, b.precision_);
  Coords x = a.c_, y = b.c_;
  a.spec_->canonicalize(x, n);
  a.spec_->canonicalize(y, n);
  return x == y;
}

nlohmann::json LocalElem::to_json() const { return {{"coords", signed_coords()}, {"prec", precision_}}; }

std::string LocalElem::format() const {
  const auto c = signed_coords();
  std::ostringstream os;
  bool first = true;
  for (std::size_t j = 0; j < c.size(); ++j)
    for (std::size_t i = 0; i < c[j].size(); ++i) {
      std::int64_t v = c[j][i];
      if (v == 0) continue;
      std::string mono;
      if (i) mono = i == 1 ? "w" : "w^" + std::to_string(i);
      if (j) mono += (mono.empty() ? "" : "*") + (j == 1 ? std::string("pi") : "pi^" + std::to_string(j));
      if (first) {
        if (v < 0) os << '-';
      } else {
        os << (v < 0 ? " - " : " + ");
      }
      first = false;
      v = v < 0 ? -v : v;
      if (mono.empty()) {
        os << v;
      } else {
        if (v != 1) os << v << '*';
        os << mono;
      }
    }
  if (first) return "0";
  return os.str();
}

bool LocalElem::is_integer() const {
  const auto c = signed_coords();
  for (std::size_t j = 0; j < c.size(); ++j)
    for (std::size_t i = 0; i < c[j].size(); ++i)
      if ((i || j) && c[j][i]) return false;
  return true;
}

LocalElem pow(const LocalElem& x, std::uint64_t e) {
  LocalElem result = LocalElem::from_int(x.spec_ptr(), 1, x.precision());
  LocalElem base = x;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

LocalElem unit_inverse(const LocalElem& x) {
  if (x.precision() == 0) throw PrecisionError("inverse of an element with no precision");
  if (x.valuation() > 0) throw NonUnitError("inverse of a non-unit (positive valuation)");
  const auto& spec = x.spec_ptr();
  const ResidueElem r = residue(x);
  LocalElem y = naive_lift({r.field, r.field->inverse(r.code)}, spec, x.precision());
  const LocalElem two = LocalElem::from_int(spec, 2, x.precision());
  // Each step doubles v(1 - xy).
  for (int correct = 1; correct < x.precision(); correct *= 2) y = y * (two - x * y);
  return y;
}

LocalElem exact_div_by_pi_power(const LocalElem& x, int n) {
  if (n < 0) throw InputError("negative pi-power");
  if (n == 0) return x;
  if (x.precision() - n <= 0) throw PrecisionError("division by pi^" + std::to_string(n) + " exhausts precision");
  if (x.valuation() < n) throw ValuationError("division by pi^" + std::to_string(n) + ": valuation is " +
                                              std::to_string(x.valuation()));
  Coords c = x.raw();
  int N = x.precision();
  for (int k = 0; k < n; ++k) {
    c = x.spec().div_pi_raw(c, N);
    --N;
  }
  return LocalElem::from_raw(x.spec_ptr(), c, N);
}

ResidueElem residue(const LocalElem& x) {
  if (x.precision() < 1) throw PrecisionError("residue of an element with no precision");
  const auto& s = x.spec();
  std::vector<std::int64_t> c(s.h());
  for (int i = 0; i < s.h(); ++i) c[i] = static_cast<std::int64_t>(x.coord(0, i) % s.p());
  return {s.residue_field(), s.residue_field()->from_coords(c)};
}

LocalElem naive_lift(const ResidueElem& t, SpecPtr spec, int precision) {
  if (!t.field->same_field(*spec->residue_field()) && t.field->degree() != 1)
    throw MismatchError("residue element from a different field");
  auto c = t.field->coords(t.code);
  std::vector<std::int64_t> block(c.begin(), c.end());
  return LocalElem::from_coords(std::move(spec), {block}, precision);
}

LocalElem teichmuller_lift(const ResidueElem& t, SpecPtr spec, int precision) {
  const std::uint64_t q = spec->q();
  LocalElem x = naive_lift(t, spec, precision);
  for (int it = 0; it <= precision + 1; ++it) {
    LocalElem y = pow(x, q);
    if (y == x) return x;
    x = std::move(y);
  }
  throw PrecisionError("teichmuller iteration did not stabilise");
}

std::vector<ResidueElem> unram_to_witt_coords(const LocalElem& x, int m) {
  const auto& spec = x.spec_ptr();
  if (spec->e() != 1) throw InputError("unram_to_witt_coords needs an unramified ring");
  if (x.precision() < m) throw PrecisionError("insufficient precision for " + std::to_string(m) + " Witt coordinates");
  const LocalElem pi_over_p = unit_inverse(exact_div_by_pi_power(LocalElem::from_int(spec, spec->p(), x.precision() + 1), 1));
  std::vector<ResidueElem> out;
  LocalElem rest = x;
  for (int j = 0; j < m; ++j) {
    const ResidueElem t = residue(rest);
    out.push_back({t.field, t.field->frobenius_power(t.code, static_cast<std::uint64_t>(j))});
    if (j + 1 < m) {
      rest = exact_div_by_pi_power(rest - teichmuller_lift(t, spec, rest.precision()), 1);
      rest = rest * pi_over_p.reduced(std::min(pi_over_p.precision(), rest.precision()));
    }
  }
  return out;
}

LocalElem witt_coords_to_unram(std::span<const ResidueElem> coords, SpecPtr unram_spec) {
  if (unram_spec->e() != 1) throw InputError("witt_coords_to_unram needs an unramified ring");
  const int m = static_cast<int>(coords.size());
  LocalElem x(unram_spec, m);
  LocalElem pj = LocalElem::from_int(unram_spec, 1, m);
  const LocalElem p = LocalElem::from_int(unram_spec, unram_spec->p(), m);
  for (int j = 0; j < m; ++j) {
    const auto& c = coords[j];
    // c_j^(1/p^j)
    FiniteFieldSpec::Code root = c.code;
    for (int k = 0; k < j; ++k) root = c.field->p_root(root);
    x += teichmuller_lift({c.field, root}, unram_spec, m) * pj;
    pj = pj * p;
  }
  return x;
}

}  // namespace wittlab
