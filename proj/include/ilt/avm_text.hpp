#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "ilt/avm.hpp"

namespace ilt::avm {

/**
 * Canonical text form: [F: value, ...] for Avms, < a, b > for lists, bare
 * names for atoms, [] for the empty structure, #n tags for shared nodes
 * (defined at first occurrence). Feature order is name-sorted, tag numbers
 * follow first-visit order, so equivalent structures print identically.
 */
std::string print(const FeatureStructure& fs);

struct ReadResult {
  std::optional<FeatureStructure> fs;
  std::string error;
};

/** Parses the text form. print(read(s)) == print of an equivalent graph. */
ReadResult read(std::string_view text);

}  // namespace ilt::avm
