#include "wittlab/witt.hpp"

#include <cctype>

namespace wittlab {

std::vector<VarSlot> bind_vars(const std::vector<std::string>& names) {
  std::vector<VarSlot> out;
  out.reserve(names.size());
  for (const auto& name : names) {
    std::size_t i = 0;
    while (i < name.size() && std::isalpha(static_cast<unsigned char>(name[i]))) ++i;
    const std::string prefix = name.substr(0, i);
    std::size_t j = i;
    while (j < name.size() && std::isdigit(static_cast<unsigned char>(name[j]))) ++j;
    if (j == i || (prefix != "X" && prefix != "Y")) throw InputError("cannot bind family variable '" + name + "'");
    VarSlot s;
    s.coord = std::stoi(name.substr(i, j - i));
    s.operand = prefix == "Y" ? 1 : 0;
    if (j < name.size()) {
      if (name[j] != '_' || j + 1 == name.size()) throw InputError("cannot bind family variable '" + name + "'");
      s.operand = std::stoi(name.substr(j + 1));
    }
    out.push_back(s);
  }
  return out;
}

}  // namespace wittlab
