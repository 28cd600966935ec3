#include "ilt/semantics.hpp"

#include <cctype>
#include <set>

namespace ilt::sem {

using signs::F;

namespace {

Symbol role_feature(const std::string& role) {
  std::string upper;
  for (char c : role) upper += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return Symbol::intern(upper);
}

std::optional<std::string> relation_name(const avm::FeatureStructure& fs, avm::NodeId id,
                                         const lex::Lexicon& lx) {
  const avm::Node& n = fs.node(id);
  if (n.kind != avm::NodeKind::Avm) return std::nullopt;
  const avm::NodeId* reln = n.feature(F().RELN);
  if (!reln || fs.node(*reln).kind != avm::NodeKind::Atom) return std::nullopt;
  const std::string& name = fs.node(*reln).atom.str();
  const lex::RelationInfo* info = lx.relation(name);
  if (info && info->scopal) return name;
  return std::nullopt;
}

struct Embedded {
  avm::NodeId parent;
  Symbol feat;
  avm::NodeId scopal;
};

/** First scopal relation in argument position, in preorder. */
std::optional<Embedded> find_embedded(const avm::FeatureStructure& fs, const lex::Lexicon& lx) {
  std::set<avm::NodeId> seen;
  std::vector<avm::NodeId> stack{fs.root()};
  while (!stack.empty()) {
    avm::NodeId id = stack.back();
    stack.pop_back();
    if (!seen.insert(id).second) continue;
    const avm::Node& n = fs.node(id);
    if (n.kind == avm::NodeKind::Avm) {
      for (auto it = n.feats.rbegin(); it != n.feats.rend(); ++it) stack.push_back(it->second);
      for (const auto& [feat, val] : n.feats) {
        if (val == fs.root()) continue;
        if (relation_name(fs, val, lx)) return Embedded{id, feat, val};
      }
    } else if (n.kind == avm::NodeKind::List) {
      for (auto it = n.items.rbegin(); it != n.items.rend(); ++it) stack.push_back(*it);
    }
  }
  return std::nullopt;
}

std::string render_node(const avm::FeatureStructure& fs, avm::NodeId id,
                        const lex::Lexicon& lx);

std::string render_args(const avm::FeatureStructure& fs, avm::NodeId id,
                        const std::vector<std::pair<std::string, Symbol>>& slots,
                        const lex::Lexicon& lx) {
  const avm::Node& n = fs.node(id);
  std::string out;
  for (const auto& [label, feat] : slots) {
    const avm::NodeId* val = n.feature(feat);
    if (!val) continue;
    std::string rendered = render_node(fs, *val, lx);
    if (rendered.empty()) continue;
    if (!out.empty()) out += ", ";
    out += label + "=" + rendered;
  }
  return out;
}

std::string render_node(const avm::FeatureStructure& fs, avm::NodeId id,
                        const lex::Lexicon& lx) {
  const avm::Node& n = fs.node(id);
  switch (n.kind) {
    case avm::NodeKind::Empty:
      return "";
    case avm::NodeKind::Atom:
      return n.atom.str();
    case avm::NodeKind::List:
      return "";
    case avm::NodeKind::Avm:
      break;
  }
  const avm::NodeId* reln = n.feature(F().RELN);
  if (!reln || fs.node(*reln).kind != avm::NodeKind::Atom) return "";
  std::string name = fs.node(*reln).atom.str();

  std::vector<std::pair<std::string, Symbol>> slots;
  if (const lex::RelationInfo* info = lx.relation(name)) {
    for (const std::string& role : info->roles) slots.emplace_back(role, role_feature(role));
  } else {
    slots.emplace_back("poss", F().POSS);
  }
  std::string args = render_args(fs, id, slots, lx);
  if (args.empty()) return name;
  return name + "(" + args + ")";
}

}  // namespace

avm::FeatureStructure raised_semantics(const signs::Sign& sign, const lex::Lexicon& lx) {
  auto sem = avm::get(sign.fs(), avm::Path({F().SEM}));
  if (!sem) return avm::FeatureStructure();
  avm::FeatureStructure cur = std::move(*sem);

  for (int guard = 0; guard < 32; ++guard) {
    auto hit = find_embedded(cur, lx);
    if (!hit) break;

    const std::string& name = cur.node(*cur.node(hit->scopal).feature(F().RELN)).atom.str();
    Symbol arg_feat = role_feature(lx.relation(name)->roles[0]);

    avm::Graph g;
    avm::NodeId root = g.import(cur);
    avm::NodeId base = g.last_base();
    avm::NodeId parent = base + hit->parent;
    avm::NodeId scopal = base + hit->scopal;

    const avm::NodeId* arg = cur.node(hit->scopal).feature(arg_feat);
    g.set(parent, hit->feat, arg ? base + *arg : g.add_empty());
    g.set(scopal, arg_feat, root);
    auto raised = g.extract(scopal);
    if (!raised) break;
    cur = std::move(*raised);
  }
  return cur;
}

std::string render_semantics(const avm::FeatureStructure& sem, const lex::Lexicon& lx) {
  std::string out = render_node(sem, sem.root(), lx);
  return out.empty() ? "_" : out;
}

std::string clause_semantics(const signs::Sign& sign, const lex::Lexicon& lx) {
  return render_semantics(raised_semantics(sign, lx), lx);
}

}  // namespace ilt::sem
