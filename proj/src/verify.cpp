#include <chrono>
#include <sstream>

#include "verify_detail.hpp"

namespace wittlab {

bool VerifyReport::passed() const {
  for (const auto& p : properties)
    if (!p.passed) return false;
  return true;
}

nlohmann::json VerifyReport::to_json(bool with_time) const {
  nlohmann::json props = nlohmann::json::array();
  for (const auto& p : properties) {
    nlohmann::json j = {{"name", p.name}, {"passed", p.passed}, {"checked", p.checked}};
    if (!p.passed) j["witness"] = p.witness;
    props.push_back(std::move(j));
  }
  nlohmann::json out = {{"suite", suite}, {"params", params}, {"passed", passed()}, {"properties", props},
                        {"table", table}};
  if (with_time) out["seconds"] = seconds;
  return out;
}

std::string VerifyReport::format() const {
  std::ostringstream os;
  os << "suite " << suite << "  " << params.dump() << "\n";
  for (const auto& p : properties) {
    os << "  " << (p.passed ? "PASS" : "FAIL") << "  " << p.name << "  [" << p.checked << " checked]\n";
    if (!p.passed) os << "        witness: " << p.witness.dump() << "\n";
  }
  for (const auto& line : table) os << "  | " << line << "\n";
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.2f", seconds);
  os << (passed() ? "PASS" : "FAIL") << "  " << properties.size() << " properties, " << secs << " s\n";
  return os.str();
}

namespace detail {

void Recorder::check(const std::string& name, bool ok, const std::function<nlohmann::json()>& witness) {
  PropertyResult* p = nullptr;
  for (auto& q : r_.properties)
    if (q.name == name) p = &q;
  if (!p) {
    r_.properties.push_back({name});
    p = &r_.properties.back();
  }
  ++p->checked;
  if (!ok && p->passed) {
    p->passed = false;
    p->witness = witness ? witness() : nlohmann::json();
  }
}

FamilyCache& cache_of(const VerifyOptions& o) { return o.cache ? *o.cache : FamilyCache::global(); }

std::vector<std::string> or_default(const std::vector<std::string>& given, std::vector<std::string> fallback) {
  return given.empty() ? fallback : given;
}

int or_default(int given, int fallback) { return given > 0 ? given : fallback; }

std::string label(const std::string& arg) {
  for (const auto& n : spec_names())
    if (n == arg) return arg;
  for (const auto& n : ext_names())
    if (n == arg) return arg;
  if (arg.size() <= 16 && arg.find('{') == std::string::npos) return arg;
  return "<spec>";
}

}  // namespace detail

namespace {

using SuiteFn = void (*)(detail::Recorder&, const VerifyOptions&);

const std::vector<std::pair<std::string, SuiteFn>>& suites() {
  static const std::vector<std::pair<std::string, SuiteFn>> all = {
      {"ghost", detail::suite_ghost},
      {"ring-axioms", detail::suite_ring_axioms},
      {"fv-identities", detail::suite_fv_identities},
      {"glue", detail::suite_glue},
      {"pi-series", detail::suite_pi_series},
      {"drinfeld-identities", detail::suite_drinfeld_identities},
      {"drinfeld-kernel-unram", detail::suite_drinfeld_kernel_unram},
      {"drinfeld-kernel-ram", detail::suite_drinfeld_kernel_ram},
      {"u2-support", detail::suite_u2_support},
      {"greenberg-ring", detail::suite_greenberg_ring},
      {"r-bijectivity", detail::suite_r_bijectivity},
      {"r-kernel", detail::suite_r_kernel},
      {"injectivity", detail::suite_injectivity},
  };
  return all;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& [name, fn] : suites()) out.push_back(name);
  return out;
}

VerifyReport run_suite(const std::string& suite, const VerifyOptions& opts) {
  for (const auto& [name, fn] : suites()) {
    if (name != suite) continue;
    VerifyReport report;
    report.suite = suite;
    detail::Recorder rec(report);
    const auto t0 = std::chrono::steady_clock::now();
    fn(rec, opts);
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
  }
  std::string known;
  for (const auto& n : suite_names()) known += (known.empty() ? "" : ", ") + n;
  throw InputError("unknown suite \"" + suite + "\" (known: " + known + ")");
}

}  // namespace wittlab
