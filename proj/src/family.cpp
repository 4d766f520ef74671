#include "wittlab/family.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "wittlab/errors.hpp"
#include "wittlab/util.hpp"

namespace wittlab {
namespace {

std::string poly_name(const std::string& kind) {
  static const std::map<std::string, std::string> names = {
      {"sum", "S"},       {"prod", "P"},          {"neg", "N"},
      {"scalar", "L"},    {"frobenius", "F"},     {"drinfeld_u", "u"},
      {"drinfeld_u_ra", "ura"}, {"uniformizer_change", "h"}, {"greenberg_r", "r"}};
  auto it = names.find(kind);
  return it == names.end() ? "G" : it->second;
}

std::vector<int> range_indices(int offset, int count) {
  std::vector<int> idx(count);
  for (int i = 0; i < count; ++i) idx[i] = offset + i;
  return idx;
}

}  // namespace

LocalElem local_param(const SpecPtr& spec, const nlohmann::json& j, int precision) {
  if (j.is_number_integer()) return LocalElem::from_int(spec, j.get<std::int64_t>(), precision);
  nlohmann::json copy = j.is_object() ? j : nlohmann::json{{"coords", j}};
  copy["prec"] = precision;
  return LocalElem::from_json(spec, copy);
}

MPoly var_power(const SpecPtr& spec, const VarList& vars, int index, std::uint64_t exponent, int precision) {
  if (exponent > 0xFFFF) throw PrecisionError("exponent " + std::to_string(exponent) + " exceeds the monomial limit");
  Exps e{};
  e[index] = static_cast<std::uint16_t>(exponent);
  return MPoly::monomial(LocalElem::from_int(spec, 1, precision), vars, e);
}

MPoly ghost_component(const SpecPtr& spec, const VarList& vars, const std::vector<int>& idx, int m,
                      const LocalElem& uniformizer, std::uint64_t q, int precision) {
  MPoly out(spec, vars, precision);
  LocalElem wi = LocalElem::from_int(spec, 1, precision);
  for (int i = 0; i <= m; ++i) {
    out += wi * var_power(spec, vars, idx.at(i), checked_pow(q, m - i), precision);
    wi = wi * uniformizer;
  }
  return out;
}

MPoly ghost_of(const std::vector<MPoly>& g, int m, const LocalElem& uniformizer, std::uint64_t q) {
  const auto& spec = g.at(0).spec_ptr();
  MPoly out(spec, g[0].vars(), uniformizer.precision());
  LocalElem wi = LocalElem::from_int(spec, 1, uniformizer.precision());
  for (int i = 0; i <= m; ++i) {
    out += wi * g.at(i).pow(checked_pow(q, m - i));
    wi = wi * uniformizer;
  }
  return out;
}

PolyFamily solve_family(const GhostProblem& pb) {
  if (pb.uniformizer.valuation() != 1) throw InputError("uniformizer must have valuation 1");
  const auto& spec = pb.spec;
  const LocalElem unit = exact_div_by_pi_power(pb.uniformizer, 1);
  const LocalElem unit_inv = unit_inverse(unit);
  PolyFamily f;
  f.kind = pb.kind;
  f.params = pb.params;
  f.spec = spec;
  f.vars = pb.vars;
  f.n = pb.n;
  f.solver_precision = pb.precision;
  for (int m = 0; m < pb.n; ++m) {
    MPoly num = pb.targets.at(m);
    LocalElem wi = LocalElem::from_int(spec, 1, pb.precision);
    for (int i = 0; i < m; ++i) {
      num -= wi * f.polys[i].pow(checked_pow(pb.q, m - i));
      wi = wi * pb.uniformizer;
    }
    MPoly g;
    try {
      g = num.exact_div_by_pi_power(m);
    } catch (const IntegralityError& ex) {
      throw IntegralityError(pb.kind + " step " + std::to_string(m) + ": " + ex.what());
    }
    if (m > 0 && unit_inv != LocalElem::from_int(spec, 1, unit_inv.precision())) g = pow(unit_inv, m) * g;
    f.polys.push_back(std::move(g));
  }
  return f;
}

bool ghost_identity_holds(const GhostProblem& pb, const PolyFamily& f, std::string* witness) {
  if (static_cast<int>(f.polys.size()) < pb.n) {
    if (witness) *witness = "family shorter than problem";
    return false;
  }
  for (int m = 0; m < pb.n; ++m) {
    std::vector<MPoly> g(f.polys.begin(), f.polys.begin() + m + 1);
    for (auto& p : g) p = p.rename_into(pb.vars);
    const MPoly lhs = ghost_of(g, m, pb.uniformizer, pb.q);
    if (!(lhs == pb.targets[m])) {
      if (witness) *witness = "ghost component " + std::to_string(m) + ": " + (lhs - pb.targets[m]).format();
      return false;
    }
  }
  return true;
}

GhostProblem witt_problem(const std::string& kind, const SpecPtr& spec, const nlohmann::json& params, int n) {
  if (n < 1) throw InputError("family length must be positive");
  GhostProblem pb;
  pb.kind = kind;
  pb.params = params.is_null() ? nlohmann::json::object() : params;
  pb.spec = spec;
  pb.n = n;
  pb.q = spec->q();
  pb.precision = n + solver_guard(spec->e());
  const int N = pb.precision;
  const LocalElem pi = LocalElem::pi(spec, N);
  pb.uniformizer = pi;
  auto phi = [&](int offset, int m, const LocalElem& w) {
    return ghost_component(spec, pb.vars, range_indices(offset, m + 1), m, w, pb.q, N);
  };

  if (kind == "sum" || kind == "prod") {
    auto names = indexed_vars("X", n);
    auto ys = indexed_vars("Y", n);
    names.insert(names.end(), ys.begin(), ys.end());
    pb.vars = make_vars(names);
    for (int m = 0; m < n; ++m)
      pb.targets.push_back(kind == "sum" ? phi(0, m, pi) + phi(n, m, pi) : phi(0, m, pi) * phi(n, m, pi));
  } else if (kind == "neg" || kind == "scalar") {
    pb.vars = make_vars(indexed_vars("X", n));
    const LocalElem lambda =
        kind == "neg" ? LocalElem::from_int(spec, -1, N) : local_param(spec, pb.params.at("lambda"), N);
    for (int m = 0; m < n; ++m) pb.targets.push_back(lambda * phi(0, m, pi));
  } else if (kind == "frobenius") {
    pb.vars = make_vars(indexed_vars("X", n + 1));
    for (int m = 0; m < n; ++m) pb.targets.push_back(phi(0, m + 1, pi));
  } else if (kind == "uniformizer_change") {
    pb.vars = make_vars(indexed_vars("X", n));
    const LocalElem unit = local_param(spec, pb.params.at("unit"), N);
    if (!unit.is_unit()) throw InputError("uniformizer change needs a unit");
    const LocalElem varpi = pi * unit;
    const bool reverse = pb.params.value("reverse", false);
    const LocalElem& from = reverse ? varpi : pi;
    pb.uniformizer = reverse ? pi : varpi;
    for (int m = 0; m < n; ++m) pb.targets.push_back(phi(0, m, from));
  } else {
    throw InputError("unknown family kind '" + kind + "'");
  }
  return pb;
}

nlohmann::json PolyFamily::to_json() const {
  nlohmann::json ps = nlohmann::json::array();
  for (const auto& p : polys) ps.push_back(p.to_json());
  return {{"kind", kind},
          {"params", params},
          {"spec", spec->to_json()},
          {"n", n},
          {"vars", *vars},
          {"solver_precision", solver_precision},
          {"polys", ps}};
}

PolyFamily PolyFamily::from_json(const nlohmann::json& j) {
  try {
    PolyFamily f;
    f.kind = j.at("kind").get<std::string>();
    f.params = j.value("params", nlohmann::json::object());
    f.spec = LocalFieldSpec::from_json(j.at("spec"));
    f.n = j.at("n").get<int>();
    f.vars = make_vars(j.at("vars").get<std::vector<std::string>>());
    f.solver_precision = j.at("solver_precision").get<int>();
    for (const auto& p : j.at("polys")) f.polys.push_back(MPoly::from_json(f.spec, f.vars, p));
    if (static_cast<int>(f.polys.size()) != f.n) throw InputError("family length does not match polys");
    return f;
  } catch (const nlohmann::json::exception& ex) {
    throw InputError(std::string("malformed family JSON: ") + ex.what());
  }
}

std::string PolyFamily::format() const {
  std::ostringstream os;
  const std::string name = poly_name(kind);
  for (std::size_t m = 0; m < polys.size(); ++m) os << name << '_' << m << " = " << polys[m].format() << '\n';
  return os.str();
}

std::string PolyFamily::content_hash() const { return sha256_hex(to_json().dump()); }

// ---------------------------------------------------------------------------

FamilyCache& FamilyCache::global() {
  static FamilyCache cache = [] {
    const char* env = std::getenv("WITTLAB_CACHE");
    return FamilyCache(env && *env ? std::optional<std::filesystem::path>(env) : std::nullopt);
  }();
  return cache;
}

void FamilyCache::set_directory(std::optional<std::filesystem::path> dir) {
  std::lock_guard lock(mu_);
  dir_ = std::move(dir);
}

FamilyCache::Stats FamilyCache::stats() const {
  std::lock_guard lock(mu_);
  return stats_;
}

void FamilyCache::clear_memory() {
  std::lock_guard lock(mu_);
  memo_.clear();
}

std::string FamilyCache::key(const LocalFieldSpec& spec, const std::string& kind, const nlohmann::json& params) {
  return kind + "-" + sha256_hex(spec.fingerprint() + "|" + kind + "|" + params.dump()).substr(0, 24);
}

std::shared_ptr<const PolyFamily> FamilyCache::load(const std::string& key, int n) {
  std::optional<std::filesystem::path> dir;
  {
    std::lock_guard lock(mu_);
    dir = dir_;
  }
  if (!dir) return nullptr;
  const auto path = *dir / (key + ".json");
  std::ifstream in(path);
  if (!in) return nullptr;
  try {
    const auto entry = nlohmann::json::parse(in);
    auto f = std::make_shared<PolyFamily>(PolyFamily::from_json(entry.at("family")));
    if (f->content_hash() != entry.at("content_hash").get<std::string>() ||
        f->spec->fingerprint() != entry.at("fingerprint").get<std::string>()) {
      std::lock_guard lock(mu_);
      ++stats_.rejected;
      return nullptr;
    }
    if (f->n < n) return nullptr;
    std::lock_guard lock(mu_);
    ++stats_.disk_loads;
    return f;
  } catch (const std::exception&) {
    std::lock_guard lock(mu_);
    ++stats_.rejected;
    return nullptr;
  }
}

void FamilyCache::store(const std::string& key, const PolyFamily& f) {
  std::optional<std::filesystem::path> dir;
  {
    std::lock_guard lock(mu_);
    dir = dir_;
  }
  if (!dir) return;
  std::filesystem::create_directories(*dir);
  const nlohmann::json entry = {{"fingerprint", f.spec->fingerprint()},
                                {"kind", f.kind},
                                {"n", f.n},
                                {"solver_precision", f.solver_precision},
                                {"content_hash", f.content_hash()},
                                {"family", f.to_json()}};
  const auto path = *dir / (key + ".json");
  const auto tmp = *dir / (key + ".json.tmp");
  {
    std::ofstream out(tmp);
    out << entry.dump() << '\n';
  }
  std::filesystem::rename(tmp, path);
}

std::shared_ptr<const PolyFamily> FamilyCache::get(const LocalFieldSpec& spec, const std::string& kind,
                                                   const nlohmann::json& params, int n, const Compute& compute) {
  const std::string k = key(spec, kind, params);
  {
    std::lock_guard lock(mu_);
    auto it = memo_.find(k);
    if (it != memo_.end() && it->second->n >= n) {
      ++stats_.memo_hits;
      return it->second;
    }
  }
  std::shared_ptr<const PolyFamily> f = load(k, n);
  const bool fresh = !f;
  if (fresh) {
    f = std::make_shared<const PolyFamily>(compute(n));
    std::lock_guard lock(mu_);
    ++stats_.computed;
  }
  {
    std::lock_guard lock(mu_);
    auto& slot = memo_[k];
    if (slot && slot->n == f->n && slot->to_json() != f->to_json())
      throw Error("cache inconsistency: two computations of " + k + " disagree");
    if (!slot || slot->n <= f->n) slot = f;
    f = slot;
  }
  if (fresh) store(k, *f);
  return f;
}

std::shared_ptr<const PolyFamily> witt_family(const SpecPtr& spec, const std::string& kind,
                                              const nlohmann::json& params, int n, FamilyCache& cache) {
  return cache.get(*spec, kind, params, n,
                   [&](int len) { return solve_family(witt_problem(kind, spec, params, len)); });
}

}  // namespace wittlab
