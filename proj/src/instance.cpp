#include "wittlab/instance.hpp"

#include <regex>

#include "wittlab/errors.hpp"

namespace wittlab {
namespace {

nlohmann::json field_of_size(const std::string& digits) {
  const std::uint64_t q = std::stoull(digits);
  if (q < 2) throw InputError("field size must be a prime power");
  std::uint64_t p = 2;
  while (q % p) ++p;
  int d = 0;
  std::uint64_t t = q;
  while (t % p == 0) {
    t /= p;
    ++d;
  }
  if (t != 1) throw InputError("field size " + digits + " is not a prime power");
  return {{"p", p}, {"d", d}};
}

}  // namespace

Instance parse_instance(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind")) throw InputError("instance descriptor needs a \"kind\"");
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "finite_field") return FiniteField::parse(j);
  if (kind == "quotient") return QuotientAlgebra::parse(j);
  if (kind == "bounded_poly") return BoundedPoly::parse(j);
  throw InputError("unknown instance kind \"" + kind + "\"");
}

Instance parse_instance(const std::string& arg) {
  static const std::regex field(R"(F(\d+))");
  static const std::regex trunc(R"(F(\d+)\[x\]/\(x\^(\d+)\))");
  static const std::regex poly(R"(F(\d+)\[x\])");
  std::smatch m;
  try {
    if (std::regex_match(arg, m, field)) {
      auto j = field_of_size(m[1]);
      j["kind"] = "finite_field";
      return parse_instance(j);
    }
    if (std::regex_match(arg, m, trunc)) {
      auto j = field_of_size(m[1]);
      j["kind"] = "quotient";
      j["vars"] = {"x"};
      j["ideal"] = {"x^" + m[2].str()};
      return parse_instance(j);
    }
    if (std::regex_match(arg, m, poly)) {
      auto j = field_of_size(m[1]);
      j["kind"] = "bounded_poly";
      return parse_instance(j);
    }
  } catch (const std::out_of_range&) {
    throw InputError("field size out of range in \"" + arg + "\"");
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(arg);
  } catch (const nlohmann::json::parse_error&) {
    throw InputError("unrecognized instance \"" + arg + "\" (expected F4, F2[x]/(x^2), F2[x] or a JSON descriptor)");
  }
  return parse_instance(j);
}

std::string describe(const Instance& inst) {
  return std::visit([](const auto& r) { return r.describe(); }, inst);
}

}  // namespace wittlab
