#include "ilt/grammar.hpp"

namespace ilt::grammar {

using signs::F;
using signs::Sign;

const char* rule_name(RuleId id) {
  switch (id) {
    case RuleId::HeadComplement: return "head_complement";
    case RuleId::HeadSubject: return "head_subject";
    case RuleId::HeadAdjunct: return "head_adjunct";
  }
  return "?";
}

namespace {

const avm::Path& head_path() {
  static const avm::Path p({F().SYN, F().LOC, F().HEAD});
  return p;
}

std::optional<Sign> extract_sign(avm::Graph& g, avm::NodeId root) {
  auto fs = g.extract(root);
  if (!fs) return std::nullopt;
  return Sign(std::move(*fs));
}

std::optional<Sign> head_complement(const Sign& left, const Sign& right) {
  std::size_t len = left.subcat_len();
  std::size_t slot = len;
  for (std::size_t i = 0; i < len; ++i) {
    if (!left.slot_is_subject(i)) {
      slot = i;
      break;
    }
  }
  if (slot == len) return std::nullopt;

  avm::Graph g;
  avm::NodeId lroot = g.import(left.fs());
  avm::NodeId lbase = g.last_base();
  avm::NodeId rroot = g.import(right.fs());
  if (!g.unify_nodes(lbase + *left.subcat_elem(slot), rroot)) return std::nullopt;

  auto head = g.resolve(lroot, head_path());
  auto sem = g.resolve(lroot, avm::Path({F().SEM}));
  if (!head || !sem) return std::nullopt;

  avm::NodeId subcat = g.add_list();
  for (std::size_t i = 0; i < len; ++i) {
    if (i == slot) continue;
    g.add_item(subcat, lbase + *left.subcat_elem(i));
  }
  avm::NodeId loc = g.add_avm();
  g.set(loc, F().HEAD, *head);
  g.set(loc, F().SUBCAT, subcat);
  avm::NodeId syn = g.add_avm();
  g.set(syn, F().LOC, loc);
  avm::NodeId mother = g.add_avm();
  g.set(mother, F().SYN, syn);
  g.set(mother, F().SEM, *sem);
  return extract_sign(g, mother);
}

std::optional<Sign> head_subject(const Sign& left, const Sign& right) {
  if (right.subcat_len() != 1 || !right.slot_is_subject(0)) return std::nullopt;

  avm::Graph g;
  avm::NodeId rroot = g.import(right.fs());
  avm::NodeId rbase = g.last_base();
  avm::NodeId lroot = g.import(left.fs());
  if (!g.unify_nodes(rbase + *right.subcat_elem(0), lroot)) return std::nullopt;

  auto head = g.resolve(rroot, head_path());
  auto sem = g.resolve(rroot, avm::Path({F().SEM}));
  if (!head || !sem) return std::nullopt;

  avm::NodeId loc = g.add_avm();
  g.set(loc, F().HEAD, *head);
  g.set(loc, F().SUBCAT, g.add_list());
  avm::NodeId syn = g.add_avm();
  g.set(syn, F().LOC, loc);
  avm::NodeId mother = g.add_avm();
  g.set(mother, F().SYN, syn);
  g.set(mother, F().SEM, *sem);
  return extract_sign(g, mother);
}

std::optional<Sign> head_adjunct(const Sign& left, const Sign& right) {
  if (!left.has_mod()) return std::nullopt;

  avm::Graph g;
  avm::NodeId lroot = g.import(left.fs());
  avm::NodeId rroot = g.import(right.fs());
  auto mod = g.resolve(lroot, avm::Path({F().SYN, F().LOC, F().HEAD, F().MOD}));
  if (!mod) return std::nullopt;
  if (!g.unify_nodes(*mod, rroot)) return std::nullopt;

  auto syn = g.resolve(rroot, avm::Path({F().SYN}));
  auto sem = g.resolve(lroot, avm::Path({F().SEM}));
  if (!syn || !sem) return std::nullopt;

  avm::NodeId mother = g.add_avm();
  g.set(mother, F().SYN, *syn);
  g.set(mother, F().SEM, *sem);
  return extract_sign(g, mother);
}

}  // namespace

std::optional<Sign> combine(RuleId id, const Sign& left, const Sign& right) {
  switch (id) {
    case RuleId::HeadComplement: return head_complement(left, right);
    case RuleId::HeadSubject: return head_subject(left, right);
    case RuleId::HeadAdjunct: return head_adjunct(left, right);
  }
  return std::nullopt;
}

std::vector<Combined> combine_all(const Sign& left, const Sign& right) {
  std::vector<Combined> out;
  for (RuleId id : {RuleId::HeadComplement, RuleId::HeadSubject, RuleId::HeadAdjunct}) {
    if (auto sign = combine(id, left, right)) out.push_back({std::move(*sign), id});
  }
  return out;
}

std::vector<Sign> optional_skip(const Sign& lexical) {
  std::vector<std::size_t> optional;
  for (std::size_t i = 0; i < lexical.subcat_len(); ++i)
    if (lexical.slot_is_optional(i)) optional.push_back(i);

  std::vector<Sign> out;
  out.push_back(lexical);
  for (std::uint32_t mask = 1; mask < (1u << optional.size()); ++mask) {
    avm::Graph g;
    avm::NodeId root = g.import(lexical.fs());
    avm::NodeId base = g.last_base();
    auto head = g.resolve(root, head_path());
    auto sem = g.resolve(root, avm::Path({F().SEM}));
    if (!head || !sem) break;

    avm::NodeId subcat = g.add_list();
    for (std::size_t i = 0; i < lexical.subcat_len(); ++i) {
      bool dropped = false;
      for (std::size_t k = 0; k < optional.size(); ++k)
        if (optional[k] == i && (mask & (1u << k))) dropped = true;
      if (!dropped) g.add_item(subcat, base + *lexical.subcat_elem(i));
    }
    avm::NodeId loc = g.add_avm();
    g.set(loc, F().HEAD, *head);
    g.set(loc, F().SUBCAT, subcat);
    avm::NodeId syn = g.add_avm();
    g.set(syn, F().LOC, loc);
    avm::NodeId mother = g.add_avm();
    g.set(mother, F().SYN, syn);
    if (auto phon = g.resolve(root, avm::Path({F().PHON})))
      g.set(mother, F().PHON, *phon);
    g.set(mother, F().SEM, *sem);
    if (auto fs = g.extract(mother)) out.push_back(Sign(std::move(*fs)));
  }
  return out;
}

}  // namespace ilt::grammar
