#include "ilt/avm_text.hpp"

#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace ilt::avm {

namespace {

class Printer {
public:
  explicit Printer(const FeatureStructure& fs) : fs_(fs), indegree_(fs.node_count(), 0) {
    count(fs.root());
  }

  std::string run() {
    std::ostringstream out;
    emit(fs_.root(), out);
    return out.str();
  }

private:
  void count(NodeId id) {
    indegree_[id]++;
    if (indegree_[id] > 1) return;
    const Node& n = fs_.node(id);
    for (const auto& [f, v] : n.feats) count(v);
    for (NodeId item : n.items) count(item);
  }

  void emit(NodeId id, std::ostringstream& out) {
    if (indegree_[id] > 1) {
      auto it = tags_.find(id);
      if (it != tags_.end()) {
        out << '#' << it->second;
        return;
      }
      int tag = next_tag_++;
      tags_.emplace(id, tag);
      out << '#' << tag << ' ';
    }
    const Node& n = fs_.node(id);
    switch (n.kind) {
      case NodeKind::Empty:
        out << "[]";
        break;
      case NodeKind::Atom:
        out << n.atom.str();
        break;
      case NodeKind::List: {
        out << '<';
        for (std::size_t i = 0; i < n.items.size(); ++i) {
          out << (i ? ", " : " ");
          emit(n.items[i], out);
        }
        out << (n.items.empty() ? ">" : " >");
        break;
      }
      case NodeKind::Avm: {
        out << '[';
        for (std::size_t i = 0; i < n.feats.size(); ++i) {
          if (i) out << ", ";
          out << n.feats[i].first.str() << ": ";
          emit(n.feats[i].second, out);
        }
        out << ']';
        break;
      }
    }
  }

  const FeatureStructure& fs_;
  std::vector<int> indegree_;
  std::map<NodeId, int> tags_;
  int next_tag_ = 1;
};

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '+' ||
         static_cast<unsigned char>(c) >= 0x80;
}

class Reader {
public:
  explicit Reader(std::string_view text) : text_(text) {}

  ReadResult run() {
    std::optional<NodeId> root = value();
    if (!root) return {std::nullopt, error_};
    skip_ws();
    if (pos_ != text_.size()) return {std::nullopt, fail("trailing input")};
    auto fs = graph_.extract(*root);
    if (!fs) return {std::nullopt, "cyclic structure"};
    return {std::move(fs), ""};
  }

private:
  std::string fail(const std::string& msg) {
    if (error_.empty()) {
      std::ostringstream out;
      out << msg << " at offset " << pos_;
      error_ = out.str();
    }
    return error_;
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) pos_++;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      pos_++;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  std::optional<std::string> name() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_name_char(text_[pos_])) pos_++;
    if (pos_ == start) {
      fail("expected a name");
      return std::nullopt;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  NodeId tag_node(int tag) {
    auto it = tag_nodes_.find(tag);
    if (it != tag_nodes_.end()) return it->second;
    NodeId id = graph_.add_empty();
    tag_nodes_.emplace(tag, id);
    return id;
  }

  // value := '#'N [value] | '[' F ':' value {',' F ':' value} ']'
  //        | '<' [value {',' value}] '>' | name
  std::optional<NodeId> value() {
    char c = peek();
    if (c == '#') {
      pos_++;
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) pos_++;
      if (pos_ == start) {
        fail("expected a tag number");
        return std::nullopt;
      }
      int tag = std::stoi(std::string(text_.substr(start, pos_ - start)));
      NodeId id = tag_node(tag);
      char next = peek();
      if (next == '[' || next == '<' || next == '#' || is_name_char(next)) {
        if (defined_.count(tag)) {
          fail("tag defined twice");
          return std::nullopt;
        }
        defined_.insert(tag);
        auto body = value();
        if (!body) return std::nullopt;
        // The placeholder is Empty, so this forwards it onto the body and
        // keeps any references issued before the definition was seen.
        if (!graph_.unify_nodes(id, *body)) {
          fail("conflicting tag definition");
          return std::nullopt;
        }
      }
      return id;
    }
    if (c == '[') return avm_value();
    if (c == '<') return list_value();
    auto n = name();
    if (!n) return std::nullopt;
    return graph_.add_atom(Symbol::intern(*n));
  }

  std::optional<NodeId> avm_value() {
    eat('[');
    NodeId id = graph_.add_avm();
    if (eat(']')) return id;
    while (true) {
      auto f = name();
      if (!f) return std::nullopt;
      if (!eat(':')) {
        fail("expected ':'");
        return std::nullopt;
      }
      auto v = value();
      if (!v) return std::nullopt;
      graph_.set(id, Symbol::intern(*f), *v);
      if (eat(',')) continue;
      if (eat(']')) return id;
      fail("expected ',' or ']'");
      return std::nullopt;
    }
  }

  std::optional<NodeId> list_value() {
    eat('<');
    NodeId id = graph_.add_list();
    if (eat('>')) return id;
    while (true) {
      auto v = value();
      if (!v) return std::nullopt;
      graph_.add_item(id, *v);
      if (eat(',')) continue;
      if (eat('>')) return id;
      fail("expected ',' or '>'");
      return std::nullopt;
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::string error_;
  Graph graph_;
  std::map<int, NodeId> tag_nodes_;
  std::set<int> defined_;
};

}  // namespace

std::string print(const FeatureStructure& fs) { return Printer(fs).run(); }

ReadResult read(std::string_view text) { return Reader(text).run(); }

}  // namespace ilt::avm
