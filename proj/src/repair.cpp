#include "ilt/repair.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

namespace ilt::repair {
namespace {

bool is_lexical(const chart::Edge& e) { return !e.rule.has_value(); }

/** The lexical edge a phrase projects from, following head daughters. */
int lexical_head(const chart::Result& result, int edge_id) {
  const chart::Edge* e = &result.edges[static_cast<std::size_t>(edge_id)];
  while (!is_lexical(*e)) {
    int next = *e->rule == grammar::RuleId::HeadComplement ? e->left : e->right;
    e = &result.edges[static_cast<std::size_t>(next)];
  }
  return e->id;
}

void walk(const chart::Result& result, int edge_id,
          std::map<int, std::vector<std::pair<std::size_t, std::size_t>>>& comps,
          std::vector<int>& mal_edges) {
  const chart::Edge& e = result.edges[static_cast<std::size_t>(edge_id)];
  if (is_lexical(e)) {
    if (e.mal != nullptr) mal_edges.push_back(e.id);
    return;
  }
  if (*e.rule == grammar::RuleId::HeadComplement) {
    int head = lexical_head(result, e.left);
    const chart::Edge& h = result.edges[static_cast<std::size_t>(head)];
    if (h.mal != nullptr) {
      const chart::Edge& c = result.edges[static_cast<std::size_t>(e.right)];
      comps[head].emplace_back(c.start, c.end);
    }
  }
  walk(result, e.left, comps, mal_edges);
  walk(result, e.right, comps, mal_edges);
}

std::vector<std::string> lexeme_names(const Analysis& a) {
  std::set<std::string> names;
  for (const RepairRecord& r : a.repairs) names.insert(r.mal->tmpl.il_lemma);
  return {names.begin(), names.end()};
}

std::size_t leftmost(const Analysis& a) {
  std::size_t best = static_cast<std::size_t>(-1);
  for (const RepairRecord& r : a.repairs) best = std::min(best, r.word_start);
  return best;
}

bool ranks_before(const Analysis& a, const Analysis& b) {
  if (a.cost != b.cost) return a.cost < b.cost;
  std::vector<std::string> an = lexeme_names(a);
  std::vector<std::string> bn = lexeme_names(b);
  if (an.size() != bn.size()) return an.size() < bn.size();
  std::size_t al = leftmost(a);
  std::size_t bl = leftmost(b);
  if (al != bl) return al < bl;
  if (an != bn) return an < bn;
  return a.root_edge < b.root_edge;
}

/** Which word positions use which transferred frames; for deduplication. */
std::vector<std::pair<std::size_t, const lex::MalEntry*>> signature(const Analysis& a) {
  std::vector<std::pair<std::size_t, const lex::MalEntry*>> key;
  key.reserve(a.repairs.size());
  for (const RepairRecord& r : a.repairs) key.emplace_back(r.word_start, r.mal);
  return key;
}

}  // namespace

std::vector<RepairRecord> collect_repairs(const chart::Result& result, int root_edge) {
  std::map<int, std::vector<std::pair<std::size_t, std::size_t>>> comps;
  std::vector<int> mal_edges;
  walk(result, root_edge, comps, mal_edges);
  std::sort(mal_edges.begin(), mal_edges.end(), [&](int x, int y) {
    const chart::Edge& ex = result.edges[static_cast<std::size_t>(x)];
    const chart::Edge& ey = result.edges[static_cast<std::size_t>(y)];
    if (ex.start != ey.start) return ex.start < ey.start;
    return ex.id < ey.id;
  });
  std::vector<RepairRecord> records;
  records.reserve(mal_edges.size());
  for (int id : mal_edges) {
    const chart::Edge& e = result.edges[static_cast<std::size_t>(id)];
    RepairRecord r;
    r.mal = e.mal;
    r.word_start = e.start;
    r.word_end = e.end;
    r.comps = comps[id];
    std::sort(r.comps.begin(), r.comps.end());
    records.push_back(std::move(r));
  }
  return records;
}

Outcome analyze(const lex::Lexicon& lexicon, const std::vector<std::string>& tokens,
                const Options& opts) {
  Outcome out;
  chart::Parser parser(lexicon);

  chart::Options strict_opts;
  strict_opts.edge_cap = opts.edge_cap;
  out.strict = parser.parse(tokens, strict_opts);
  if (out.strict.status != chart::ParseStatus::NoParse) return out;

  chart::Options repair_opts;
  repair_opts.max_cost = opts.max_cost;
  repair_opts.edge_cap = opts.edge_cap;
  out.repaired = parser.parse(tokens, repair_opts);
  if (out.repaired->status != chart::ParseStatus::Ok) return out;

  std::vector<Analysis> analyses;
  std::set<std::pair<int, std::vector<std::pair<std::size_t, const lex::MalEntry*>>>> seen;
  for (int root : out.repaired->roots) {
    const chart::Edge& e = out.repaired->edges[static_cast<std::size_t>(root)];
    Analysis a;
    a.root_edge = root;
    a.cost = e.cost;
    a.repairs = collect_repairs(*out.repaired, root);
    if (!seen.insert({a.cost, signature(a)}).second) continue;
    analyses.push_back(std::move(a));
  }
  std::sort(analyses.begin(), analyses.end(), ranks_before);
  if (analyses.size() > opts.beam) analyses.resize(opts.beam);
  out.analyses = std::move(analyses);
  return out;
}

}  // namespace ilt::repair
