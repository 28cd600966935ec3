#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace ilt {

/** Interned string. Copy is cheap; equality is id comparison. */
class Symbol {
public:
  Symbol() = default;

  static Symbol intern(std::string_view name);

  const std::string& str() const;
  std::uint32_t id() const { return id_; }
  bool valid() const { return id_ != 0; }

  friend bool operator==(Symbol a, Symbol b) { return a.id_ == b.id_; }
  friend bool operator!=(Symbol a, Symbol b) { return a.id_ != b.id_; }

private:
  explicit Symbol(std::uint32_t id) : id_(id) {}
  std::uint32_t id_ = 0;
};

/** Orders symbols by name, not id, so output order is stable across runs. */
bool symbol_name_less(Symbol a, Symbol b);

}  // namespace ilt
