#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "wittlab/catalog.hpp"
#include "wittlab/errors.hpp"
#include "wittlab/instance.hpp"
#include "wittlab/verify.hpp"

namespace wittlab::detail {

class Recorder {
 public:
  explicit Recorder(VerifyReport& r) : r_(r) {}

  /// Counts one check of `name`; the first failure keeps its witness.
  void check(const std::string& name, bool ok, const std::function<nlohmann::json()>& witness);
  void note(std::string line) { r_.table.push_back(std::move(line)); }
  void param(const std::string& key, nlohmann::json value) { r_.params[key] = std::move(value); }

 private:
  VerifyReport& r_;
};

FamilyCache& cache_of(const VerifyOptions& o);
std::vector<std::string> or_default(const std::vector<std::string>& given, std::vector<std::string> fallback);
int or_default(int given, int fallback);
/// Short name for property labels: catalog names verbatim, anything else "<spec>".
std::string label(const std::string& arg);

/// A is an algebra over the residue field of `spec` (the structure map exists).
template <class R>
bool is_k_algebra(const LocalFieldSpec& spec, const R& ring) {
  const auto& k = *spec.residue_field();
  return ring.field().p() == k.p() && (k.degree() == 1 || ring.field().same_field(k));
}

/// All pairs (i, j) with i <= j when there are at most `budget`, otherwise
/// `budget` pairs drawn with the seed.
template <class F>
void for_pairs(std::size_t size, std::size_t budget, std::uint64_t seed, F&& f) {
  if (size * (size + 1) / 2 <= budget) {
    for (std::size_t i = 0; i < size; ++i)
      for (std::size_t j = i; j < size; ++j) f(i, j);
    return;
  }
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < budget; ++t) f(rng() % size, rng() % size);
}

template <class F>
void for_triples(std::size_t size, std::size_t budget, std::uint64_t seed, F&& f) {
  if (size * size * size <= budget) {
    for (std::size_t i = 0; i < size; ++i)
      for (std::size_t j = 0; j < size; ++j)
        for (std::size_t k = 0; k < size; ++k) f(i, j, k);
    return;
  }
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < budget; ++t) f(rng() % size, rng() % size, rng() % size);
}

/// Calls f(ring) for an enumerable instance.
template <class F>
void with_finite(const Instance& inst, F&& f) {
  std::visit(
      [&](const auto& ring) {
        using R = std::decay_t<decltype(ring)>;
        if constexpr (Enumerable<R>)
          f(ring);
        else
          throw InputError("this suite enumerates the instance; " + ring.describe() + " is infinite");
      },
      inst);
}

void suite_ghost(Recorder& rec, const VerifyOptions& o);
void suite_ring_axioms(Recorder& rec, const VerifyOptions& o);
void suite_fv_identities(Recorder& rec, const VerifyOptions& o);
void suite_glue(Recorder& rec, const VerifyOptions& o);
void suite_pi_series(Recorder& rec, const VerifyOptions& o);

void suite_drinfeld_identities(Recorder& rec, const VerifyOptions& o);
void suite_drinfeld_kernel_unram(Recorder& rec, const VerifyOptions& o);
void suite_drinfeld_kernel_ram(Recorder& rec, const VerifyOptions& o);
void suite_u2_support(Recorder& rec, const VerifyOptions& o);

void suite_greenberg_ring(Recorder& rec, const VerifyOptions& o);
void suite_r_bijectivity(Recorder& rec, const VerifyOptions& o);
void suite_r_kernel(Recorder& rec, const VerifyOptions& o);
void suite_injectivity(Recorder& rec, const VerifyOptions& o);

}  // namespace wittlab::detail
