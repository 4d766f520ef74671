#include "wittlab/finite_field.hpp"

#include <sstream>

#include "wittlab/errors.hpp"

namespace wittlab {
namespace {

std::uint32_t mod_p(std::int64_t v, std::uint32_t p) {
  std::int64_t r = v % static_cast<std::int64_t>(p);
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r);
}

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Remainder of a by monic b over F_p; both low to high.
std::vector<std::uint32_t> poly_rem(std::vector<std::uint32_t> a, std::span<const std::uint32_t> b,
                                    std::uint32_t p) {
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    std::uint32_t lead = a.back();
    if (lead != 0) {
      const std::size_t shift = a.size() - 1 - db;
      for (std::size_t i = 0; i < db; ++i) {
        std::uint64_t t = static_cast<std::uint64_t>(lead) * b[i] % p;
        a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - t) % p);
      }
    }
    a.pop_back();
  }
  return a;
}

}  // namespace

bool is_irreducible_mod_p(std::uint32_t p, std::span<const std::uint32_t> monic) {
  const int d = static_cast<int>(monic.size()) - 1;
  if (d < 1) return false;
  if (d == 1) return true;
  // Enumerate monic divisors of degree k, 1 <= k <= d/2.
  for (int k = 1; k <= d / 2; ++k) {
    std::uint64_t count = 1;
    for (int i = 0; i < k; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::vector<std::uint32_t> div(k + 1);
      std::uint64_t t = idx;
      for (int i = 0; i < k; ++i) {
        div[i] = static_cast<std::uint32_t>(t % p);
        t /= p;
      }
      div[k] = 1;
      auto r = poly_rem(std::vector<std::uint32_t>(monic.begin(), monic.end()), div, p);
      bool zero = true;
      for (auto c : r) zero = zero && c == 0;
      if (zero) return false;
    }
  }
  return true;
}

FiniteFieldSpec::FiniteFieldSpec(std::uint32_t p, std::span<const std::int64_t> modulus) : p_(p) {
  if (!is_prime(p)) throw InputError("characteristic " + std::to_string(p) + " is not prime");
  if (modulus.size() < 2) throw InputError("field modulus must have degree >= 1");
  d_ = static_cast<int>(modulus.size()) - 1;
  for (auto c : modulus) modulus_.push_back(mod_p(c, p));
  if (modulus_.back() != 1) throw InputError("field modulus must be monic");
  if (!is_irreducible_mod_p(p, modulus_))
    throw InputError("field modulus is reducible mod " + std::to_string(p));
  size_ = 1;
  for (int i = 0; i < d_; ++i) {
    size_ *= p;
    if (size_ > (1ULL << 31)) throw InputError("finite field too large");
  }
  if (size_ <= 256) {
    add_table_.resize(size_ * size_);
    mul_table_.resize(size_ * size_);
    for (Code a = 0; a < size_; ++a)
      for (Code b = 0; b < size_; ++b) {
        add_table_[a * size_ + b] = add_slow(a, b);
        mul_table_[a * size_ + b] = mul_slow(a, b);
      }
  }
}

std::shared_ptr<const FiniteFieldSpec> FiniteFieldSpec::create(std::uint32_t p,
                                                               std::span<const std::int64_t> modulus) {
  return std::make_shared<const FiniteFieldSpec>(p, modulus);
}

std::shared_ptr<const FiniteFieldSpec> FiniteFieldSpec::prime(std::uint32_t p) {
  const std::int64_t m[] = {0, 1};
  return create(p, m);
}

std::shared_ptr<const FiniteFieldSpec> FiniteFieldSpec::with_degree(std::uint32_t p, int d) {
  if (d < 1) throw InputError("field degree must be positive");
  if (!is_prime(p)) throw InputError("characteristic " + std::to_string(p) + " is not prime");
  std::uint64_t count = 1;
  for (int i = 0; i < d; ++i) count *= p;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::vector<std::uint32_t> m(d + 1);
    std::uint64_t t = idx;
    for (int i = 0; i < d; ++i) {
      m[i] = static_cast<std::uint32_t>(t % p);
      t /= p;
    }
    m[d] = 1;
    if (is_irreducible_mod_p(p, m)) {
      std::vector<std::int64_t> mi(m.begin(), m.end());
      return create(p, mi);
    }
  }
  throw InputError("no irreducible polynomial found");  // unreachable for prime p
}

bool FiniteFieldSpec::same_field(const FiniteFieldSpec& other) const {
  return this == &other || (p_ == other.p_ && modulus_ == other.modulus_);
}

FiniteFieldSpec::Code FiniteFieldSpec::from_int(std::int64_t v) const { return mod_p(v, p_); }

FiniteFieldSpec::Code FiniteFieldSpec::from_coords(std::span<const std::int64_t> coords) const {
  if (static_cast<int>(coords.size()) > d_) throw InputError("too many field coordinates");
  Code c = 0, scale = 1;
  for (auto v : coords) {
    c += mod_p(v, p_) * scale;
    scale *= p_;
  }
  return c;
}

std::vector<std::uint32_t> FiniteFieldSpec::coords(Code x) const {
  std::vector<std::uint32_t> out(d_);
  for (int i = 0; i < d_; ++i) {
    out[i] = x % p_;
    x /= p_;
  }
  return out;
}

FiniteFieldSpec::Code FiniteFieldSpec::add_slow(Code a, Code b) const {
  Code out = 0, scale = 1;
  for (int i = 0; i < d_; ++i) {
    out += ((a % p_ + b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return out;
}

FiniteFieldSpec::Code FiniteFieldSpec::mul_slow(Code a, Code b) const {
  auto ca = coords(a), cb = coords(b);
  std::vector<std::uint32_t> prod(2 * d_ - 1, 0);
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < d_; ++j)
      prod[i + j] = static_cast<std::uint32_t>(
          (prod[i + j] + static_cast<std::uint64_t>(ca[i]) * cb[j]) % p_);
  auto r = poly_rem(std::move(prod), modulus_, p_);
  Code out = 0, scale = 1;
  for (int i = 0; i < d_ && i < static_cast<int>(r.size()); ++i) {
    out += r[i] * scale;
    scale *= p_;
  }
  return out;
}

FiniteFieldSpec::Code FiniteFieldSpec::add(Code a, Code b) const {
  if (!add_table_.empty()) return add_table_[a * size_ + b];
  return add_slow(a, b);
}

FiniteFieldSpec::Code FiniteFieldSpec::neg(Code a) const {
  Code out = 0, scale = 1;
  for (int i = 0; i < d_; ++i) {
    out += ((p_ - a % p_) % p_) * scale;
    a /= p_;
    scale *= p_;
  }
  return out;
}

FiniteFieldSpec::Code FiniteFieldSpec::mul(Code a, Code b) const {
  if (!mul_table_.empty()) return mul_table_[a * size_ + b];
  return mul_slow(a, b);
}

FiniteFieldSpec::Code FiniteFieldSpec::pow(Code a, std::uint64_t e) const {
  if (e == 0) return one();
  if (a == 0) return 0;
  e %= (size_ - 1);
  if (e == 0) e = size_ - 1;
  Code result = one();
  while (e) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

FiniteFieldSpec::Code FiniteFieldSpec::frobenius_power(Code a, std::uint64_t k) const {
  k %= static_cast<std::uint64_t>(d_);
  for (std::uint64_t i = 0; i < k; ++i) a = pow(a, p_);
  return a;
}

FiniteFieldSpec::Code FiniteFieldSpec::inverse(Code a) const {
  if (a == 0) throw NonUnitError("inverse of zero in finite field");
  return pow(a, size_ - 2 == 0 ? size_ - 1 : size_ - 2);
}

FiniteFieldSpec::Code FiniteFieldSpec::p_root(Code a) const {
  return frobenius_power(a, static_cast<std::uint64_t>(d_ - 1));
}

FiniteFieldSpec::Code FiniteFieldSpec::q_root(Code a, int h) const {
  const std::uint64_t k = static_cast<std::uint64_t>((d_ - h % d_) % d_);
  return frobenius_power(a, k);
}

std::string FiniteFieldSpec::format(Code x) const {
  if (d_ == 1) return std::to_string(x);
  auto c = coords(x);
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < d_; ++i) os << (i ? "," : "") << c[i];
  os << ']';
  return os.str();
}

namespace {
void require_same(const ResidueElem& a, const ResidueElem& b) {
  if (!a.field->same_field(*b.field)) throw MismatchError("residue elements from different fields");
}
}  // namespace

ResidueElem residue_add(const ResidueElem& a, const ResidueElem& b) {
  require_same(a, b);
  return {a.field, a.field->add(a.code, b.code)};
}

ResidueElem residue_mul(const ResidueElem& a, const ResidueElem& b) {
  require_same(a, b);
  return {a.field, a.field->mul(a.code, b.code)};
}

ResidueElem residue_pow(const ResidueElem& a, std::uint64_t e) { return {a.field, a.field->pow(a.code, e)}; }

ResidueElem residue_p_root(const ResidueElem& a) { return {a.field, a.field->p_root(a.code)}; }

}  // namespace wittlab
