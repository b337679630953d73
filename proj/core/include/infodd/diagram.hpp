#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "infodd/table.hpp"

namespace infodd {

/// Handle to a node inside the Diagram that created it.
class NodeRef {
 public:
  NodeRef() = default;

  std::uint32_t index() const { return index_; }
  std::uint64_t owner() const { return owner_; }

  friend bool operator==(const NodeRef&, const NodeRef&) = default;
  friend auto operator<=>(const NodeRef&, const NodeRef&) = default;

 private:
  friend class Diagram;
  NodeRef(std::uint64_t owner, std::uint32_t index) : owner_(owner), index_(index) {}

  std::uint64_t owner_ = 0;
  std::uint32_t index_ = 0;
};

struct NonTerminal {
  std::size_t var = 0;
  std::vector<NodeRef> children;
};

struct Terminal {
  int value = 0;
};

/// Terminal carrying no value: no product matches the path.
struct XTerminal {};

using Node = std::variant<NonTerminal, Terminal, XTerminal>;

enum class DiagramKind { tree, reduced };

/// Outcome of following a path: a terminal value, or nullopt at the x-terminal.
using Leaf = std::optional<int>;

struct CostMetrics {
  std::size_t nonterminals = 0;
  std::size_t levels = 0;
  std::size_t terminals = 0;

  friend bool operator==(const CostMetrics&, const CostMetrics&) = default;
};

struct PathConstraint {
  std::size_t var = 0;
  int value = 0;

  friend bool operator==(const PathConstraint&, const PathConstraint&) = default;
};

struct PathDescriptor {
  std::vector<PathConstraint> constraints;
  Leaf leaf;
};

/// Rooted DAG of decision nodes over a TableSchema. Nodes are append-only.
/// REDUCED diagrams apply both reduction rules while interning: a node whose
/// children are all identical is replaced by that child, and a repeated
/// (var, children) tuple returns the existing node. TREE diagrams append
/// every decision node; terminals are shared in both kinds.
class Diagram {
 public:
  Diagram(std::shared_ptr<const TableSchema> schema, DiagramKind kind);

  DiagramKind kind() const { return kind_; }
  const TableSchema& schema() const { return *schema_; }
  const std::shared_ptr<const TableSchema>& schema_ptr() const { return schema_; }

  /// Throws std::invalid_argument on a child count that differs from the
  /// variable's arity, an unknown variable, or a NodeRef from another diagram.
  NodeRef intern(Node node);
  NodeRef terminal(int value);
  NodeRef x_terminal();

  NodeRef root() const;
  bool has_root() const { return root_.has_value(); }
  void set_root(NodeRef ref);

  const Node& node(NodeRef ref) const;
  bool is_terminal(NodeRef ref) const;
  bool owns(NodeRef ref) const;

  /// Number of stored nodes, reachable or not.
  std::size_t stored_nodes() const { return nodes_.size(); }

 private:
  struct KeyHash {
    std::size_t operator()(const std::vector<std::uint32_t>& key) const noexcept;
  };

  NodeRef append(Node node);
  void check_ref(NodeRef ref) const;

  std::shared_ptr<const TableSchema> schema_;
  DiagramKind kind_;
  std::uint64_t id_;
  std::vector<Node> nodes_;
  std::unordered_map<std::vector<std::uint32_t>, NodeRef, KeyHash> unique_;
  std::unordered_map<int, NodeRef> terminals_;
  std::optional<NodeRef> x_terminal_;
  std::optional<NodeRef> root_;
};

/// Follows children[assignment[var]] from the root. Throws
/// std::invalid_argument on a short assignment or an out-of-domain value.
Leaf evaluate(const Diagram& diagram, std::span<const int> assignment);

/// Counts over the nodes reachable from the root. Levels is the maximum
/// number of decision nodes on a root-to-terminal path.
CostMetrics cost(const Diagram& diagram);

/// Every root-to-terminal path exactly once, children visited in value order.
std::vector<PathDescriptor> enumerate_paths(const Diagram& diagram);

/// Bottom-up re-interning of the reachable nodes into a REDUCED diagram.
Diagram reduce(const Diagram& diagram);

/// No variable is tested twice on any root-to-terminal path.
bool is_free(const Diagram& diagram);

/// True when no reachable decision node has all-equal children and no two
/// reachable decision nodes share (var, children).
bool is_canonical(const Diagram& diagram);

}  // namespace infodd
