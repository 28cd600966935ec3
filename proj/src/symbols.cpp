#include "ilt/symbols.hpp"

#include <mutex>
#include <unordered_map>
#include <vector>

namespace ilt {

namespace {

struct Table {
  std::mutex mu;
  std::vector<std::string> names{""};  // id 0 reserved for the invalid symbol
  std::unordered_map<std::string, std::uint32_t> ids;
};

Table& table() {
  static Table t;
  return t;
}

}  // namespace

Symbol Symbol::intern(std::string_view name) {
  Table& t = table();
  std::lock_guard<std::mutex> lock(t.mu);
  auto it = t.ids.find(std::string(name));
  if (it != t.ids.end()) return Symbol(it->second);
  auto id = static_cast<std::uint32_t>(t.names.size());
  t.names.emplace_back(name);
  t.ids.emplace(std::string(name), id);
  return Symbol(id);
}

const std::string& Symbol::str() const {
  Table& t = table();
  std::lock_guard<std::mutex> lock(t.mu);
  return t.names.at(id_);
}

bool symbol_name_less(Symbol a, Symbol b) {
  if (a == b) return false;
  return a.str() < b.str();
}

}  // namespace ilt
