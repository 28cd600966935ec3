#pragma once

#include <optional>
#include <vector>

#include "ilt/signs.hpp"

namespace ilt::grammar {

/**
 * The three phrase composition schemata. Complements cancel from the
 * subcat list leftmost first (most oblique first); the subject slot
 * cancels last, once it is the only one left.
 */
enum class RuleId { HeadComplement, HeadSubject, HeadAdjunct };

const char* rule_name(RuleId id);

/**
 * Combines two adjacent signs under one schema, left of right.
 *   HeadComplement: head left, fills its leftmost non-subject slot.
 *   HeadSubject:    head right with only the subject slot open.
 *   HeadAdjunct:    adjunct left, its MOD constraint unifies the head.
 * The mother keeps the head's syntax minus the cancelled slot; under
 * HeadAdjunct the adjunct supplies the semantics. No match or a failed
 * unification yields nullopt.
 */
std::optional<signs::Sign> combine(RuleId id, const signs::Sign& left,
                                   const signs::Sign& right);

struct Combined {
  signs::Sign sign;
  RuleId rule;
};

/** All schemata that accept the pair, in fixed rule order. */
std::vector<Combined> combine_all(const signs::Sign& left, const signs::Sign& right);

/**
 * The sign itself plus one variant per subset of its optional slots
 * dropped, in ascending bitmask order over those slots. Applied once,
 * to lexical signs.
 */
std::vector<signs::Sign> optional_skip(const signs::Sign& lexical);

}  // namespace ilt::grammar
