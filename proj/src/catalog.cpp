#include "wittlab/catalog.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "wittlab/errors.hpp"

namespace wittlab {
namespace {

constexpr int kPrecision = 16;

nlohmann::json read_json_arg(const std::string& arg) {
  std::string text = arg;
  if (!arg.empty() && arg.front() != '{' && arg.front() != '[') {
    std::ifstream in(arg);
    if (!in) throw InputError("cannot read '" + arg + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& ex) {
    throw InputError(std::string("invalid JSON: ") + ex.what());
  }
}

}  // namespace

SpecPtr named_spec(const std::string& name) {
  static const std::map<std::string, SpecPtr> specs = {
      {"Z2", LocalFieldSpec::p_adic_integers(2, kPrecision)},
      {"Z3", LocalFieldSpec::p_adic_integers(3, kPrecision)},
      {"Z2[pi]", LocalFieldSpec::create(2, 1, 2, {0, 1}, {{-2}, {0}, {1}}, kPrecision)},
      {"W(F4)", LocalFieldSpec::unramified(2, {1, 1, 1}, kPrecision)},
      {"W(F4)[pi]", LocalFieldSpec::create(2, 2, 2, {1, 1, 1}, {{-2, 0}, {0, 0}, {1, 0}}, kPrecision)},
  };
  auto it = specs.find(name);
  if (it == specs.end()) throw InputError("unknown ring '" + name + "'");
  return it->second;
}

ExtPtr named_ext(const std::string& name) {
  static const std::map<std::string, ExtPtr> exts = {
      {"unram-r2", ExtensionSpec::create(named_spec("Z2"), named_spec("W(F4)"), nullptr, nullptr)},
      {"ram-e2", ExtensionSpec::create(named_spec("Z2"), named_spec("Z2[pi]"), 2, nullptr)},
      {"tower-upper", ExtensionSpec::create(named_spec("W(F4)"), named_spec("W(F4)[pi]"), nullptr, nullptr)},
      {"composite", ExtensionSpec::create(named_spec("Z2"), named_spec("W(F4)[pi]"), 2, nullptr)},
  };
  auto it = exts.find(name);
  if (it == exts.end()) throw InputError("unknown extension '" + name + "'");
  return it->second;
}

std::vector<std::string> spec_names() { return {"Z2", "Z3", "Z2[pi]", "W(F4)", "W(F4)[pi]"}; }
std::vector<std::string> ext_names() { return {"unram-r2", "ram-e2", "tower-upper", "composite"}; }

SpecPtr load_spec(const std::string& arg) {
  for (const auto& n : spec_names())
    if (n == arg) return named_spec(n);
  return LocalFieldSpec::from_json(read_json_arg(arg));
}

ExtPtr load_ext(const std::string& arg) {
  for (const auto& n : ext_names())
    if (n == arg) return named_ext(n);
  return ExtensionSpec::from_json(read_json_arg(arg));
}

}  // namespace wittlab
