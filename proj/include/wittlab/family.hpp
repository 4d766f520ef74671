#pragma once

// Universal structure polynomials by recursive ghost inversion.
//
// Every family here is the unique solution G_0, G_1, ... of
//
//   sum_{i<=m} w^i G_i^{Q^(m-i)} = T_m        (m = 0, 1, ...)
//
// for given targets T_m, a uniformizer w and a Frobenius exponent Q. Step m
// divides by w^m, so the solver starts from precision N0 = n + guard and G_m
// is known modulo pi^(N0 - m).

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wittlab/local_ring.hpp"
#include "wittlab/mpoly.hpp"

namespace wittlab {

struct GhostProblem {
  std::string kind;
  nlohmann::json params = nlohmann::json::object();
  SpecPtr spec;
  VarList vars;
  int n = 0;
  int precision = 0;
  LocalElem uniformizer;
  std::uint64_t q = 0;
  std::vector<MPoly> targets;
};

struct PolyFamily {
  std::string kind;
  nlohmann::json params = nlohmann::json::object();
  SpecPtr spec;
  VarList vars;
  int n = 0;
  int solver_precision = 0;
  std::vector<MPoly> polys;

  nlohmann::json to_json() const;
  static PolyFamily from_json(const nlohmann::json& j);
  /// One line per polynomial: "name_m = ...".
  std::string format() const;
  /// SHA-256 of the canonical JSON dump.
  std::string content_hash() const;
};

/// Default guard digits for a ring of ramification index e.
inline int solver_guard(int e) { return 2 * e; }

/// X^(Q^k) with an overflow check on the exponent.
MPoly var_power(const SpecPtr& spec, const VarList& vars, int index, std::uint64_t exponent, int precision);

/// Phi_m = sum_{i<=m} w^i X_{idx[i]}^(Q^(m-i)).
MPoly ghost_component(const SpecPtr& spec, const VarList& vars, const std::vector<int>& idx, int m,
                      const LocalElem& uniformizer, std::uint64_t q, int precision);

/// sum_{i<=m} w^i G_i^(Q^(m-i)) for polynomials G.
MPoly ghost_of(const std::vector<MPoly>& g, int m, const LocalElem& uniformizer, std::uint64_t q);

/// Solves a ghost problem. Throws IntegralityError on a non-exact division.
PolyFamily solve_family(const GhostProblem& problem);

/// Recomputes Phi_m(G) and compares with the targets at the precision of G_m.
/// On failure writes the first offending index to `witness`.
bool ghost_identity_holds(const GhostProblem& problem, const PolyFamily& family, std::string* witness = nullptr);

/// Ghost problems for the single-ring kinds: sum, prod, neg, scalar, frobenius,
/// uniformizer_change. `params` carries {"lambda": coords} for scalar and
/// {"unit": coords, "reverse": bool} for uniformizer_change.
GhostProblem witt_problem(const std::string& kind, const SpecPtr& spec, const nlohmann::json& params, int n);

/// Parses a LocalElem from {"coords": ...} or an integer at the given precision.
LocalElem local_param(const SpecPtr& spec, const nlohmann::json& j, int precision);

/// Memoized family store with optional on-disk persistence.
class FamilyCache {
 public:
  FamilyCache() = default;
  explicit FamilyCache(std::optional<std::filesystem::path> dir) : dir_(std::move(dir)) {}

  /// Process-wide cache, directory taken from WITTLAB_CACHE if set.
  static FamilyCache& global();

  void set_directory(std::optional<std::filesystem::path> dir);
  const std::optional<std::filesystem::path>& directory() const { return dir_; }

  using Compute = std::function<PolyFamily(int n)>;
  /// A family of length at least n for (spec, kind, params).
  std::shared_ptr<const PolyFamily> get(const LocalFieldSpec& spec, const std::string& kind,
                                        const nlohmann::json& params, int n, const Compute& compute);

  struct Stats {
    int memo_hits = 0;
    int disk_loads = 0;
    int computed = 0;
    int rejected = 0;
  };
  Stats stats() const;
  void clear_memory();

  static std::string key(const LocalFieldSpec& spec, const std::string& kind, const nlohmann::json& params);

 private:
  std::shared_ptr<const PolyFamily> load(const std::string& key, int n);
  void store(const std::string& key, const PolyFamily& f);

  std::optional<std::filesystem::path> dir_;
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<const PolyFamily>> memo_;
  Stats stats_;
};

/// Cached families of the single-ring kinds.
std::shared_ptr<const PolyFamily> witt_family(const SpecPtr& spec, const std::string& kind, const nlohmann::json& params,
                                              int n, FamilyCache& cache = FamilyCache::global());

}  // namespace wittlab
