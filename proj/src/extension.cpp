#include "wittlab/extension.hpp"

#include <algorithm>

#include "wittlab/errors.hpp"
#include "wittlab/family.hpp"

namespace wittlab {
namespace {

LocalElem eval_unram_poly(const std::vector<std::int64_t>& coeffs, const LocalElem& x) {
  LocalElem acc(x.spec_ptr(), x.precision());
  for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * x + LocalElem::from_int(x.spec_ptr(), coeffs[k], x.precision());
  return acc;
}

}  // namespace

std::shared_ptr<const ExtensionSpec> ExtensionSpec::create(SpecPtr base, SpecPtr top, const nlohmann::json& pi_image,
                                                           const nlohmann::json& omega_image) {
  if (!base || !top) throw InputError("extension needs both rings");
  if (base->p() != top->p()) throw MismatchError("extension rings have different residue characteristic");
  if (top->h() % base->h() != 0) throw InputError("residue degree of the top ring is not a multiple of the base");
  if (top->e() % base->e() != 0) throw InputError("ramification index of the top ring is not a multiple of the base");

  std::shared_ptr<ExtensionSpec> x(new ExtensionSpec());
  x->base_ = base;
  x->top_ = top;
  x->r_ = top->h() / base->h();
  x->e_ = top->e() / base->e();
  const int maxp = top->max_precision();

  if (base->h() > 1) {
    if (!omega_image.is_null()) {
      x->omega_img_ = local_param(top, omega_image, maxp);
    } else if (base->unram_modulus() == top->unram_modulus()) {
      x->omega_img_ = LocalElem::omega(top, maxp);
    } else {
      throw UnsupportedError("the image of omega must be given when the unramified moduli differ");
    }
    x->has_omega_ = true;
    const LocalElem rel = eval_unram_poly(base->unram_modulus(), x->omega_img_);
    if (!rel.is_zero() && rel.valuation() < top->default_precision())
      throw InputError("omega image does not satisfy the unramified modulus of the base");
  }

  if (!pi_image.is_null()) {
    x->pi_img_ = local_param(top, pi_image, maxp);
  } else if (base->e() == 1) {
    x->pi_img_ = LocalElem(top, maxp);  // placeholder, embed() does not read it when e_base = 1
    x->pi_img_ = x->embed(LocalElem::pi(base, base->max_precision()));
  } else {
    throw InputError("the image of pi must be given for a ramified base");
  }
  if (x->pi_img_.valuation() != x->e_)
    throw InputError("image of pi has valuation " + std::to_string(x->pi_img_.valuation()) + ", expected " +
                     std::to_string(x->e_));

  // f_pi(iota(pi)) = 0 with f_pi the Eisenstein polynomial of the base.
  LocalElem acc(top, maxp);
  LocalElem pw = LocalElem::from_int(top, 1, maxp);
  for (const auto& c : base->eisenstein()) {
    acc += x->embed(LocalElem::from_coords(base, {c}, base->max_precision())) * pw;
    pw = pw * x->pi_img_;
  }
  if (!acc.is_zero() && acc.valuation() < top->default_precision())
    throw InputError("image of pi does not satisfy the Eisenstein polynomial of the base");

  x->embedding_json_ = {{"pi", x->pi_img_.signed_coords()}};
  if (x->has_omega_) x->embedding_json_["omega"] = x->omega_img_.signed_coords();
  return x;
}

std::shared_ptr<const ExtensionSpec> ExtensionSpec::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("base") || !j.contains("top"))
    throw InputError("extension JSON needs \"base\" and \"top\"");
  const auto emb = j.value("embedding", nlohmann::json::object());
  return create(LocalFieldSpec::from_json(j.at("base")), LocalFieldSpec::from_json(j.at("top")),
                emb.value("pi", nlohmann::json()), emb.value("omega", nlohmann::json()));
}

nlohmann::json ExtensionSpec::to_json() const {
  return {{"base", base_->to_json()}, {"top", top_->to_json()}, {"embedding", embedding_json_}};
}

nlohmann::json ExtensionSpec::family_params() const {
  return {{"base", base_->to_json()}, {"embedding", embedding_json_}};
}

LocalElem ExtensionSpec::embed(const LocalElem& x) const {
  if (!x.spec().same_ring(*base_)) throw MismatchError("element is not in the base ring of the extension");
  const int N = std::min(x.precision() * e_, top_->max_precision());
  LocalElem out(top_, N);
  LocalElem pj = LocalElem::from_int(top_, 1, N);
  for (int j = 0; j < base_->e(); ++j) {
    LocalElem wi = LocalElem::from_int(top_, 1, N);
    for (int i = 0; i < base_->h(); ++i) {
      const auto c = static_cast<std::int64_t>(x.coord(j, i));
      if (c) out += LocalElem::from_int(top_, c, N) * wi * pj;
      if (i + 1 < base_->h()) wi = wi * omega_img_.reduced(N);
    }
    if (j + 1 < base_->e()) pj = pj * pi_img_.reduced(N);
  }
  return out.reduced(N);
}

LocalElem ExtensionSpec::pi_image(int precision) const {
  return pi_img_.reduced(std::min(precision, pi_img_.precision()));
}

LocalElem ExtensionSpec::alpha(int precision) const {
  return exact_div_by_pi_power(pi_image(precision + e_), e_);
}

}  // namespace wittlab
