#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ilt/symbols.hpp"

namespace ilt::avm {

using NodeId = std::uint32_t;

enum class NodeKind : std::uint8_t { Empty, Atom, List, Avm };

/**
 * One node of a feature graph. Avm nodes hold a name-sorted feature map,
 * List nodes an ordered item sequence, Atom nodes a symbol. Empty is the
 * fully underspecified node.
 */
struct Node {
  NodeKind kind = NodeKind::Empty;
  Symbol atom;
  std::vector<std::pair<Symbol, NodeId>> feats;
  std::vector<NodeId> items;

  const NodeId* feature(Symbol f) const {
    for (const auto& [name, value] : feats)
      if (name == f) return &value;
    return nullptr;
  }
};

/** Feature path, e.g. SYN|LOC|SUBCAT. */
class Path {
public:
  Path() = default;
  explicit Path(std::vector<Symbol> feats) : feats_(std::move(feats)) {}

  /** Parses "SYN|LOC|HEAD". An empty string is the empty path (the root). */
  static Path parse(std::string_view text);

  const std::vector<Symbol>& feats() const { return feats_; }
  bool empty() const { return feats_.empty(); }
  std::size_t size() const { return feats_.size(); }
  Path extended(Symbol f) const;
  std::string str() const;

private:
  std::vector<Symbol> feats_;
};

class FeatureStructure;

namespace detail {
FeatureStructure make_structure(std::vector<Node> nodes, NodeId root);
}

/**
 * A rooted acyclic feature graph with structure sharing. Immutable once
 * built; all operations produce fresh structures. Canonical form: only
 * nodes reachable from the root are stored, feature maps are name-sorted,
 * and no Avm node has zero features (that is Empty).
 */
class FeatureStructure {
public:
  /** The empty (fully underspecified) structure. */
  FeatureStructure();

  static FeatureStructure make_atom(Symbol s);
  static FeatureStructure make_atom(std::string_view name);

  NodeId root() const { return root_; }
  const Node& node(NodeId id) const { return nodes_[id]; }
  std::size_t node_count() const { return nodes_.size(); }
  bool is_empty() const { return nodes_[root_].kind == NodeKind::Empty; }

  /** Node reached by walking the path from the root, if every arc exists. */
  std::optional<NodeId> node_at(const Path& p) const;

private:
  friend class Builder;
  friend class Graph;
  friend FeatureStructure detail::make_structure(std::vector<Node> nodes, NodeId root);
  std::vector<Node> nodes_;
  NodeId root_ = 0;
};

/**
 * Constructs feature graphs node by node. Sharing a NodeId between two
 * parents produces reentrancy. finish() canonicalizes and rejects cycles.
 */
class Builder {
public:
  NodeId empty();
  NodeId atom(Symbol s);
  NodeId atom(std::string_view name);
  NodeId avm();
  NodeId list();

  void set(NodeId avm_node, Symbol f, NodeId value);
  void add_item(NodeId list_node, NodeId value);

  std::optional<FeatureStructure> finish(NodeId root) const;

private:
  friend class Graph;
  std::vector<Node> nodes_;
};

/**
 * Mutable working graph for unification and structure surgery. Imports
 * existing structures, merges nodes destructively under a union-find,
 * and extracts canonical results. Used by the unifier and by the phrase
 * composition code; not part of the stable value-level interface.
 */
class Graph {
public:
  /** Copies fs in; returned id is the imported root. Node ids are offset. */
  NodeId import(const FeatureStructure& fs);
  /** Offset that import() applied to the most recently imported structure. */
  NodeId last_base() const { return last_base_; }

  NodeId add_empty();
  NodeId add_atom(Symbol s);
  NodeId add_avm();
  NodeId add_list();
  void set(NodeId avm_node, Symbol f, NodeId value);
  void add_item(NodeId list_node, NodeId value);

  NodeId find(NodeId id);
  const Node& node(NodeId id) { return nodes_[find(id)]; }

  /** Destructively unifies two nodes. False on clash; graph is then spent. */
  bool unify_nodes(NodeId a, NodeId b);

  /** Read-only walk; nullopt when an arc is missing or crosses a non-Avm. */
  std::optional<NodeId> resolve(NodeId from, const Path& p);
  /** Walk that turns Empty nodes into Avms as needed to realize the path. */
  std::optional<NodeId> materialize(NodeId from, const Path& p);

  /** Canonical copy of everything reachable from root; nullopt on a cycle. */
  std::optional<FeatureStructure> extract(NodeId root);

private:
  NodeId fresh(Node n);
  bool merge(NodeId a, NodeId b);
  std::vector<Node> nodes_;
  std::vector<NodeId> parent_;
  NodeId last_base_ = 0;
};

/** Most general structure carrying all information of both, if consistent. */
std::optional<FeatureStructure> unify(const FeatureStructure& a, const FeatureStructure& b);

/** True when b carries all information of a (paths, sharing, atoms). */
bool subsumes(const FeatureStructure& a, const FeatureStructure& b);

/** Mutual subsumption. */
bool equivalent(const FeatureStructure& a, const FeatureStructure& b);

/** Substructure at p, or nullopt when p is not defined. */
std::optional<FeatureStructure> get(const FeatureStructure& fs, const Path& p);

/**
 * Unifies value into the substructure at p, creating the path over Empty
 * nodes as needed. Fails on clash or when p crosses an atom or list.
 */
std::optional<FeatureStructure> put(const FeatureStructure& fs, const Path& p,
                                    const FeatureStructure& value);

/** Makes p1 and p2 share one node (unifying what both held). */
std::optional<FeatureStructure> share(const FeatureStructure& fs, const Path& p1,
                                      const Path& p2);

}  // namespace ilt::avm
