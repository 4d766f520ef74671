#pragma once

// A finite extension O'/O of local rings together with the embedding O -> O'.
//
// The embedding is fixed by the images of omega (only when O has h > 1) and of
// pi. Both are checked against the defining polynomials of O, so the map is a
// ring homomorphism at the working precision.

#include <memory>

#include <nlohmann/json.hpp>

#include "wittlab/local_ring.hpp"

namespace wittlab {

class ExtensionSpec {
 public:
  /// `omega_image` may be null when O has h = 1 or O and O' share the
  /// unramified modulus; `pi_image` may be null when O is unramified.
  static std::shared_ptr<const ExtensionSpec> create(SpecPtr base, SpecPtr top, const nlohmann::json& pi_image,
                                                     const nlohmann::json& omega_image);
  /// {"base": spec, "top": spec, "embedding": {"pi": coords, "omega": coords}}
  static std::shared_ptr<const ExtensionSpec> from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  const SpecPtr& base() const { return base_; }
  const SpecPtr& top() const { return top_; }
  /// Residue degree and ramification index of O'/O.
  int r() const { return r_; }
  int e() const { return e_; }
  /// |k|, the Frobenius exponent of the base.
  std::uint64_t q() const { return base_->q(); }

  /// Image of x in O'; precision N becomes N * e (capped by O').
  LocalElem embed(const LocalElem& x) const;
  /// iota(pi) at the given precision of O'.
  LocalElem pi_image(int precision) const;
  /// alpha = iota(pi) / varpi^e, a unit of O'.
  LocalElem alpha(int precision) const;

  /// The part of to_json() that, together with the top fingerprint, pins a family.
  nlohmann::json family_params() const;

 private:
  ExtensionSpec() = default;

  SpecPtr base_, top_;
  int r_ = 1, e_ = 1;
  LocalElem omega_img_, pi_img_;  // at top->max_precision()
  bool has_omega_ = false;
  nlohmann::json embedding_json_;
};

using ExtPtr = std::shared_ptr<const ExtensionSpec>;

}  // namespace wittlab
