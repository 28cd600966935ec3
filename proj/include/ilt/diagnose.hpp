#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ilt/repair.hpp"

namespace ilt::diagnose {

enum class Status { NoDiagnosis, Diagnosed, NoAnalysis, UnknownWord, EdgeCapExceeded };

/** Lowercase wire name, e.g. "no_diagnosis". */
const char* status_name(Status status);

/** One located transfer error, flattened out of a ranked analysis. */
struct Diagnosis {
  std::string il_lemma;
  std::string l1_lemma;
  std::string observed_frame;
  std::string l1_frame;
  std::vector<std::string> lt_frames;
  std::string classification;
  int rank = 1;
  int cost = 1;
  /** Token span of the repaired word. */
  std::size_t span_start = 0;
  std::size_t span_end = 0;
  /** Rewritten sentence in the target frame; empty when none applies. */
  std::string paraphrase;
};

struct Report {
  Status status = Status::NoAnalysis;
  std::string sentence;
  std::vector<std::string> tokens;
  std::vector<Diagnosis> diagnoses;
  /** Semantics and derivation of the best reading, repaired if need be. */
  std::string semantics;
  std::string tree;
  std::size_t unknown_index = 0;
  std::string unknown_token;
};

struct Options {
  int max_cost = 2;
  std::size_t beam = 16;
  std::size_t edge_cap = 10000;
};

Report run(const lex::Lexicon& lexicon, const std::string& sentence, const Options& opts = {});

/**
 * Machine format: one JSON object per line, in rank order, with a fixed
 * key set. A report with no diagnoses is one line whose unused keys are
 * null. Byte-stable across runs.
 */
std::vector<std::string> json_lines(const Report& report);

/** Human-readable block, one line per finding plus the best reading. */
std::string text_report(const Report& report);

}  // namespace ilt::diagnose
