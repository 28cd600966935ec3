#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ilt/chart.hpp"

namespace ilt::repair {

/** One transferred-frame edge inside a repaired derivation. */
struct RepairRecord {
  const lex::MalEntry* mal = nullptr;
  /** Span of the repaired word itself. */
  std::size_t word_start = 0;
  std::size_t word_end = 0;
  /** Spans of the complements the transferred frame attached, in order. */
  std::vector<std::pair<std::size_t, std::size_t>> comps;
};

/** One repaired full parse: which words were reanalyzed, at what cost. */
struct Analysis {
  int root_edge = -1;
  int cost = 0;
  std::vector<RepairRecord> repairs;  // by word position
};

struct Options {
  /** Repair budget: how many transferred frames one parse may use. */
  int max_cost = 2;
  /** How many analyses to keep after ranking. */
  std::size_t beam = 16;
  std::size_t edge_cap = 10000;
};

/**
 * Strict parse followed, only on failure, by a repair parse. Analyses are
 * ranked by cost, then fewest distinct repaired lexemes, then leftmost
 * repaired word, then lexeme names, and truncated to the beam. A sentence
 * the target grammar accepts is never assigned repairs.
 */
struct Outcome {
  chart::Result strict;
  std::optional<chart::Result> repaired;
  std::vector<Analysis> analyses;
};

Outcome analyze(const lex::Lexicon& lexicon, const std::vector<std::string>& tokens,
                const Options& opts = {});

/** The transferred-frame records of one derivation, by word position. */
std::vector<RepairRecord> collect_repairs(const chart::Result& result, int root_edge);

}  // namespace ilt::repair
