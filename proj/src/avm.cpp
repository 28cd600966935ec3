#include "ilt/avm.hpp"

#include <algorithm>
#include <unordered_map>

namespace ilt::avm {

FeatureStructure detail::make_structure(std::vector<Node> nodes, NodeId root) {
  FeatureStructure fs;
  fs.nodes_ = std::move(nodes);
  fs.root_ = root;
  return fs;
}

Path Path::parse(std::string_view text) {
  std::vector<Symbol> feats;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t bar = text.find('|', pos);
    if (bar == std::string_view::npos) bar = text.size();
    std::string_view part = text.substr(pos, bar - pos);
    while (!part.empty() && part.front() == ' ') part.remove_prefix(1);
    while (!part.empty() && part.back() == ' ') part.remove_suffix(1);
    if (!part.empty()) feats.push_back(Symbol::intern(part));
    if (bar == text.size()) break;
    pos = bar + 1;
  }
  return Path(std::move(feats));
}

Path Path::extended(Symbol f) const {
  std::vector<Symbol> feats = feats_;
  feats.push_back(f);
  return Path(std::move(feats));
}

std::string Path::str() const {
  std::string out;
  for (std::size_t i = 0; i < feats_.size(); ++i) {
    if (i) out += '|';
    out += feats_[i].str();
  }
  return out;
}

FeatureStructure::FeatureStructure() : nodes_(1), root_(0) {}

FeatureStructure FeatureStructure::make_atom(Symbol s) {
  FeatureStructure fs;
  fs.nodes_[0].kind = NodeKind::Atom;
  fs.nodes_[0].atom = s;
  return fs;
}

FeatureStructure FeatureStructure::make_atom(std::string_view name) {
  return make_atom(Symbol::intern(name));
}

std::optional<NodeId> FeatureStructure::node_at(const Path& p) const {
  NodeId cur = root_;
  for (Symbol f : p.feats()) {
    const NodeId* next = nodes_[cur].feature(f);
    if (!next) return std::nullopt;
    cur = *next;
  }
  return cur;
}

namespace {

/**
 * Copies the subgraph below a root into a fresh node vector, resolving ids
 * through Resolve, assigning new ids in first-visit order, name-sorting
 * feature maps, and collapsing featureless Avms to Empty. Detects cycles.
 */
template <class Resolve>
class Extractor {
public:
  Extractor(const std::vector<Node>& src, Resolve resolve)
      : src_(src), resolve_(resolve), marks_(src.size(), 0), map_(src.size(), 0) {}

  std::optional<FeatureStructure> run(NodeId root) {
    NodeId r = resolve_(root);
    if (!visit(r)) return std::nullopt;
    return detail::make_structure(std::move(out_), map_[r]);
  }

private:
  NodeId alloc() {
    out_.emplace_back();
    return static_cast<NodeId>(out_.size() - 1);
  }

  bool visit(NodeId id) {
    if (marks_[id] == 1) return false;
    if (marks_[id] == 2) return true;
    marks_[id] = 1;
    NodeId nid = alloc();
    map_[id] = nid;
    const Node& n = src_[id];
    Node copy;
    switch (n.kind) {
      case NodeKind::Empty:
        break;
      case NodeKind::Atom:
        copy.kind = NodeKind::Atom;
        copy.atom = n.atom;
        break;
      case NodeKind::List: {
        copy.kind = NodeKind::List;
        for (NodeId item : n.items) {
          NodeId r = resolve_(item);
          if (!visit(r)) return false;
          copy.items.push_back(map_[r]);
        }
        break;
      }
      case NodeKind::Avm: {
        if (n.feats.empty()) break;
        copy.kind = NodeKind::Avm;
        for (const auto& [f, v] : n.feats) {
          NodeId r = resolve_(v);
          if (!visit(r)) return false;
          copy.feats.emplace_back(f, map_[r]);
        }
        std::sort(copy.feats.begin(), copy.feats.end(),
                  [](const auto& x, const auto& y) { return symbol_name_less(x.first, y.first); });
        break;
      }
    }
    out_[nid] = std::move(copy);
    marks_[id] = 2;
    return true;
  }

  const std::vector<Node>& src_;
  Resolve resolve_;
  std::vector<std::uint8_t> marks_;
  std::vector<NodeId> map_;
  std::vector<Node> out_;
};

}  // namespace

NodeId Builder::empty() {
  nodes_.emplace_back();
  return static_cast<NodeId>(nodes_.size() - 1);
}

NodeId Builder::atom(Symbol s) {
  NodeId id = empty();
  nodes_[id].kind = NodeKind::Atom;
  nodes_[id].atom = s;
  return id;
}

NodeId Builder::atom(std::string_view name) { return atom(Symbol::intern(name)); }

NodeId Builder::avm() {
  NodeId id = empty();
  nodes_[id].kind = NodeKind::Avm;
  return id;
}

NodeId Builder::list() {
  NodeId id = empty();
  nodes_[id].kind = NodeKind::List;
  return id;
}

void Builder::set(NodeId avm_node, Symbol f, NodeId value) {
  Node& n = nodes_[avm_node];
  if (n.kind == NodeKind::Empty) n.kind = NodeKind::Avm;
  for (auto& [name, v] : n.feats) {
    if (name == f) {
      v = value;
      return;
    }
  }
  n.feats.emplace_back(f, value);
}

void Builder::add_item(NodeId list_node, NodeId value) {
  nodes_[list_node].items.push_back(value);
}

std::optional<FeatureStructure> Builder::finish(NodeId root) const {
  Extractor ex(nodes_, [](NodeId id) { return id; });
  return ex.run(root);
}

NodeId Graph::fresh(Node n) {
  nodes_.push_back(std::move(n));
  parent_.push_back(static_cast<NodeId>(parent_.size()));
  return static_cast<NodeId>(nodes_.size() - 1);
}

NodeId Graph::import(const FeatureStructure& fs) {
  NodeId base = static_cast<NodeId>(nodes_.size());
  last_base_ = base;
  for (const Node& n : fs.nodes_) {
    Node copy = n;
    for (auto& [f, v] : copy.feats) v += base;
    for (auto& item : copy.items) item += base;
    fresh(std::move(copy));
  }
  return base + fs.root_;
}

NodeId Graph::add_empty() { return fresh(Node{}); }

NodeId Graph::add_atom(Symbol s) {
  Node n;
  n.kind = NodeKind::Atom;
  n.atom = s;
  return fresh(std::move(n));
}

NodeId Graph::add_avm() {
  Node n;
  n.kind = NodeKind::Avm;
  return fresh(std::move(n));
}

NodeId Graph::add_list() {
  Node n;
  n.kind = NodeKind::List;
  return fresh(std::move(n));
}

void Graph::set(NodeId avm_node, Symbol f, NodeId value) {
  Node& n = nodes_[avm_node];
  if (n.kind == NodeKind::Empty) n.kind = NodeKind::Avm;
  for (auto& [name, v] : n.feats) {
    if (name == f) {
      v = value;
      return;
    }
  }
  n.feats.emplace_back(f, value);
}

void Graph::add_item(NodeId list_node, NodeId value) {
  nodes_[list_node].items.push_back(value);
}

NodeId Graph::find(NodeId id) {
  while (parent_[id] != id) {
    parent_[id] = parent_[parent_[id]];
    id = parent_[id];
  }
  return id;
}

bool Graph::unify_nodes(NodeId a, NodeId b) { return merge(a, b); }

bool Graph::merge(NodeId a, NodeId b) {
  a = find(a);
  b = find(b);
  if (a == b) return true;
  NodeKind ka = nodes_[a].kind;
  NodeKind kb = nodes_[b].kind;
  if (ka == NodeKind::Empty) {
    parent_[a] = b;
    return true;
  }
  if (kb == NodeKind::Empty) {
    parent_[b] = a;
    return true;
  }
  if (ka != kb) return false;
  if (ka == NodeKind::Atom) {
    if (nodes_[a].atom != nodes_[b].atom) return false;
    parent_[b] = a;
    return true;
  }
  if (ka == NodeKind::List) {
    if (nodes_[a].items.size() != nodes_[b].items.size()) return false;
    parent_[b] = a;
    auto ia = nodes_[a].items;
    auto ib = nodes_[b].items;
    for (std::size_t i = 0; i < ia.size(); ++i)
      if (!merge(ia[i], ib[i])) return false;
    return true;
  }
  // Avm with Avm. Cycles may form here; extraction rejects them.
  parent_[b] = a;
  auto bf = nodes_[b].feats;
  for (const auto& [f, v] : bf) {
    NodeId rep = find(a);
    const NodeId* existing = nodes_[rep].feature(f);
    if (existing) {
      if (!merge(*existing, v)) return false;
    } else {
      nodes_[rep].feats.emplace_back(f, v);
    }
  }
  return true;
}

std::optional<NodeId> Graph::resolve(NodeId from, const Path& p) {
  NodeId cur = find(from);
  for (Symbol f : p.feats()) {
    const NodeId* next = nodes_[cur].feature(f);
    if (!next) return std::nullopt;
    cur = find(*next);
  }
  return cur;
}

std::optional<NodeId> Graph::materialize(NodeId from, const Path& p) {
  NodeId cur = find(from);
  for (Symbol f : p.feats()) {
    if (nodes_[cur].kind == NodeKind::Empty) nodes_[cur].kind = NodeKind::Avm;
    if (nodes_[cur].kind != NodeKind::Avm) return std::nullopt;
    const NodeId* next = nodes_[cur].feature(f);
    if (next) {
      cur = find(*next);
      continue;
    }
    NodeId value = add_empty();
    nodes_[cur].feats.emplace_back(f, value);
    cur = value;
  }
  return cur;
}

std::optional<FeatureStructure> Graph::extract(NodeId root) {
  Extractor ex(nodes_, [this](NodeId id) { return find(id); });
  return ex.run(root);
}

std::optional<FeatureStructure> unify(const FeatureStructure& a, const FeatureStructure& b) {
  Graph g;
  NodeId ra = g.import(a);
  NodeId rb = g.import(b);
  if (!g.unify_nodes(ra, rb)) return std::nullopt;
  return g.extract(ra);
}

namespace {

bool subsumes_rec(const FeatureStructure& a, NodeId an, const FeatureStructure& b, NodeId bn,
                  std::unordered_map<NodeId, NodeId>& mapping) {
  auto it = mapping.find(an);
  if (it != mapping.end()) return it->second == bn;
  mapping.emplace(an, bn);
  const Node& na = a.node(an);
  const Node& nb = b.node(bn);
  switch (na.kind) {
    case NodeKind::Empty:
      return true;
    case NodeKind::Atom:
      return nb.kind == NodeKind::Atom && na.atom == nb.atom;
    case NodeKind::List: {
      if (nb.kind != NodeKind::List) return false;
      if (na.items.size() != nb.items.size()) return false;
      for (std::size_t i = 0; i < na.items.size(); ++i)
        if (!subsumes_rec(a, na.items[i], b, nb.items[i], mapping)) return false;
      return true;
    }
    case NodeKind::Avm: {
      if (nb.kind != NodeKind::Avm) return false;
      for (const auto& [f, v] : na.feats) {
        const NodeId* bv = nb.feature(f);
        if (!bv) return false;
        if (!subsumes_rec(a, v, b, *bv, mapping)) return false;
      }
      return true;
    }
  }
  return false;
}

}  // namespace

bool subsumes(const FeatureStructure& a, const FeatureStructure& b) {
  std::unordered_map<NodeId, NodeId> mapping;
  return subsumes_rec(a, a.root(), b, b.root(), mapping);
}

bool equivalent(const FeatureStructure& a, const FeatureStructure& b) {
  return subsumes(a, b) && subsumes(b, a);
}

std::optional<FeatureStructure> get(const FeatureStructure& fs, const Path& p) {
  auto nid = fs.node_at(p);
  if (!nid) return std::nullopt;
  Graph g;
  g.import(fs);
  return g.extract(g.last_base() + *nid);
}

std::optional<FeatureStructure> put(const FeatureStructure& fs, const Path& p,
                                    const FeatureStructure& value) {
  Graph g;
  NodeId root = g.import(fs);
  auto target = g.materialize(root, p);
  if (!target) return std::nullopt;
  NodeId vroot = g.import(value);
  if (!g.unify_nodes(*target, vroot)) return std::nullopt;
  return g.extract(root);
}

std::optional<FeatureStructure> share(const FeatureStructure& fs, const Path& p1,
                                      const Path& p2) {
  Graph g;
  NodeId root = g.import(fs);
  auto t1 = g.materialize(root, p1);
  if (!t1) return std::nullopt;
  auto t2 = g.materialize(root, p2);
  if (!t2) return std::nullopt;
  if (!g.unify_nodes(*t1, *t2)) return std::nullopt;
  return g.extract(root);
}

}  // namespace ilt::avm
