#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ilt/grammar.hpp"
#include "ilt/lexicon.hpp"

namespace ilt::chart {

/** Whitespace tokens, stripped of surrounding ascii punctuation. */
std::vector<std::string> tokenize(std::string_view sentence);

enum class ParseStatus { Ok, NoParse, UnknownWord, EdgeCapExceeded };

const char* parse_status_name(ParseStatus status);

/**
 * One chart edge over the token span [start, end). Lexical edges carry
 * their lexicon hit; transferred-frame edges additionally carry the mal
 * entry and a cost of one. Phrasal edges point at their daughters and
 * accumulate the mal entries and cost of both.
 */
struct Edge {
  int id = -1;
  std::size_t start = 0;
  std::size_t end = 0;
  signs::Sign sign;
  int left = -1;
  int right = -1;
  std::optional<grammar::RuleId> rule;
  const lex::LexicalEntry* entry = nullptr;
  const lex::MalEntry* mal = nullptr;
  std::vector<const lex::MalEntry*> mals;  // transferred frames this edge used, id order
  int cost = 0;
};

struct Options {
  /** Admit transferred-frame edges while total cost stays within this. */
  int max_cost = 0;
  std::size_t edge_cap = 10000;
  /** Parse with the learner's grammar at this stage instead. */
  std::optional<lex::Stage> stage;
};

struct Result {
  ParseStatus status = ParseStatus::NoParse;
  std::vector<Edge> edges;
  /** Full-span saturated finite clauses, cheapest first. */
  std::vector<int> roots;
  std::size_t unknown_index = 0;
  std::string unknown_token;
  std::vector<std::string> tokens;
};

class Parser {
public:
  explicit Parser(const lex::Lexicon& lexicon) : lx_(lexicon) {}

  Result parse(const std::vector<std::string>& tokens, const Options& opts = {}) const;

private:
  const lex::Lexicon& lx_;
};

/** Bracketed derivation of one edge: (S (NP Jeg) (VP[fin] ...)). */
std::string render_tree(const Result& result, int edge_id);

}  // namespace ilt::chart
