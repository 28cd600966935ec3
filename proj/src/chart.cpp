#include "ilt/chart.hpp"

#include <algorithm>
#include <deque>

namespace ilt::chart {

std::vector<std::string> tokenize(std::string_view sentence) {
  std::vector<std::string> tokens;
  std::string cur;
  auto flush = [&] {
    std::size_t a = cur.find_first_not_of(".,!?;:\"()");
    std::size_t b = cur.find_last_not_of(".,!?;:\"()");
    if (a != std::string::npos) tokens.push_back(cur.substr(a, b - a + 1));
    cur.clear();
  };
  for (char c : sentence) {
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') flush();
    else cur += c;
  }
  flush();
  return tokens;
}

const char* parse_status_name(ParseStatus status) {
  switch (status) {
    case ParseStatus::Ok: return "OK";
    case ParseStatus::NoParse: return "NO_PARSE";
    case ParseStatus::UnknownWord: return "UNKNOWN_WORD";
    case ParseStatus::EdgeCapExceeded: return "EDGE_CAP_EXCEEDED";
  }
  return "?";
}

namespace {

/** Agenda-driven chart construction over one token sequence. */
class Run {
public:
  Run(const lex::Lexicon& lx, const std::vector<std::string>& tokens, const Options& opts)
      : lx_(lx), tokens_(tokens), opts_(opts) {
    result_.tokens = tokens;
    by_start_.resize(tokens.size() + 1);
    by_end_.resize(tokens.size() + 1);
  }

  Result run() {
    if (tokens_.empty()) return std::move(result_);
    if (!add_lexical_edges()) return std::move(result_);
    close();
    if (result_.status != ParseStatus::EdgeCapExceeded) collect_roots();
    return std::move(result_);
  }

private:
  bool add_lexical_edges() {
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
      bool any = false;
      auto add_variants = [&](const signs::Sign& sign, const lex::LexicalEntry* entry,
                              const lex::MalEntry* mal, int cost) {
        for (const signs::Sign& variant : grammar::optional_skip(sign)) {
          Edge e;
          e.start = i;
          e.end = i + 1;
          e.sign = variant;
          e.entry = entry;
          e.mal = mal;
          if (mal) e.mals.push_back(mal);
          e.cost = cost;
          if (add_edge(std::move(e))) any = true;
        }
      };
      if (opts_.stage) {
        for (const auto& [sign, hit] : lx_.il_signs_for(tokens_[i], *opts_.stage))
          add_variants(sign, hit.entry, nullptr, 0);
      } else {
        for (const auto& [sign, hit] : lx_.signs_for(tokens_[i]))
          add_variants(sign, hit.entry, nullptr, 0);
        if (opts_.max_cost > 0) {
          for (const auto& hit : lx_.mal_signs_for(tokens_[i]))
            add_variants(hit.sign, nullptr, hit.entry, 1);
        }
      }
      if (!any && result_.status != ParseStatus::EdgeCapExceeded) {
        if (lx_.lookup(tokens_[i], signs::Lang::Lt).empty()) {
          result_.status = ParseStatus::UnknownWord;
          result_.unknown_index = i;
          result_.unknown_token = tokens_[i];
          return false;
        }
        // Known token whose signs were all pruned: leave the gap.
      }
      if (result_.status == ParseStatus::EdgeCapExceeded) return false;
    }
    return true;
  }

  void close() {
    while (!agenda_.empty()) {
      int id = agenda_.front();
      agenda_.pop_front();
      Edge e = result_.edges[static_cast<std::size_t>(id)];

      std::vector<int> lefts = by_end_[e.start];
      for (int f : lefts)
        if (!try_pair(f, id)) return;
      std::vector<int> rights = by_start_[e.end];
      for (int f : rights)
        if (!try_pair(id, f)) return;
    }
  }

  bool try_pair(int left_id, int right_id) {
    const Edge& l = result_.edges[static_cast<std::size_t>(left_id)];
    const Edge& r = result_.edges[static_cast<std::size_t>(right_id)];
    int cost = l.cost + r.cost;
    if (cost > opts_.max_cost) return true;
    // Snapshot before add_edge can grow (and reallocate) the edge vector.
    std::size_t start = l.start;
    std::size_t end = r.end;
    std::vector<const lex::MalEntry*> mals = l.mals;
    mals.insert(mals.end(), r.mals.begin(), r.mals.end());
    std::sort(mals.begin(), mals.end());
    auto combined = grammar::combine_all(l.sign, r.sign);
    for (auto& [sign, rule] : combined) {
      Edge e;
      e.start = start;
      e.end = end;
      e.sign = std::move(sign);
      e.left = left_id;
      e.right = right_id;
      e.rule = rule;
      e.cost = cost;
      e.mals = mals;
      add_edge(std::move(e));
      if (result_.status == ParseStatus::EdgeCapExceeded) return false;
    }
    return true;
  }

  /** False when an equivalent same-or-cheaper edge already covers the span. */
  bool add_edge(Edge e) {
    for (int other : by_start_[e.start]) {
      const Edge& g = result_.edges[static_cast<std::size_t>(other)];
      if (g.end != e.end || g.cost > e.cost || g.mals != e.mals) continue;
      if (signs::sign_equivalent(g.sign, e.sign)) return false;
    }
    if (result_.edges.size() >= opts_.edge_cap) {
      result_.status = ParseStatus::EdgeCapExceeded;
      return false;
    }
    e.id = static_cast<int>(result_.edges.size());
    by_start_[e.start].push_back(e.id);
    by_end_[e.end].push_back(e.id);
    agenda_.push_back(e.id);
    result_.edges.push_back(std::move(e));
    return true;
  }

  void collect_roots() {
    for (const Edge& e : result_.edges) {
      if (e.start == 0 && e.end == tokens_.size() && e.sign.is_root_clause())
        result_.roots.push_back(e.id);
    }
    std::stable_sort(result_.roots.begin(), result_.roots.end(), [&](int a, int b) {
      return result_.edges[static_cast<std::size_t>(a)].cost <
             result_.edges[static_cast<std::size_t>(b)].cost;
    });
    if (!result_.roots.empty()) result_.status = ParseStatus::Ok;
  }

  const lex::Lexicon& lx_;
  const std::vector<std::string>& tokens_;
  const Options& opts_;
  Result result_;
  std::deque<int> agenda_;
  std::vector<std::vector<int>> by_start_;
  std::vector<std::vector<int>> by_end_;
};

}  // namespace

Result Parser::parse(const std::vector<std::string>& tokens, const Options& opts) const {
  return Run(lx_, tokens, opts).run();
}

std::string render_tree(const Result& result, int edge_id) {
  const Edge& e = result.edges[static_cast<std::size_t>(edge_id)];
  std::string label = e.sign.summary();
  if (e.mal) label += "*";
  if (e.left < 0) {
    std::string word;
    if (e.start < result.tokens.size()) word = result.tokens[e.start];
    if (word.empty()) {
      auto phon = e.sign.phon();
      word = phon ? phon->str() : "?";
    }
    return "(" + label + " " + word + ")";
  }
  return "(" + label + " " + render_tree(result, e.left) + " " +
         render_tree(result, e.right) + ")";
}

}  // namespace ilt::chart
