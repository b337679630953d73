#include "infodd/diagram.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace infodd {

namespace {

std::uint64_t next_diagram_id() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1, std::memory_order_relaxed);
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

std::size_t Diagram::KeyHash::operator()(const std::vector<std::uint32_t>& key) const noexcept {
  std::size_t h = key.size();
  for (std::uint32_t k : key) h ^= std::hash<std::uint32_t>{}(k) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

Diagram::Diagram(std::shared_ptr<const TableSchema> schema, DiagramKind kind)
    : schema_(std::move(schema)), kind_(kind), id_(next_diagram_id()) {
  if (!schema_) throw std::invalid_argument("diagram without schema");
}

bool Diagram::owns(NodeRef ref) const { return ref.owner_ == id_ && ref.index_ < nodes_.size(); }

void Diagram::check_ref(NodeRef ref) const {
  if (!owns(ref)) throw std::invalid_argument("NodeRef does not belong to this diagram");
}

NodeRef Diagram::append(Node node) {
  nodes_.push_back(std::move(node));
  return NodeRef(id_, static_cast<std::uint32_t>(nodes_.size() - 1));
}

NodeRef Diagram::terminal(int value) {
  if (value < 0 || value >= schema_->output_arity()) throw std::invalid_argument("terminal value out of range");
  if (auto it = terminals_.find(value); it != terminals_.end()) return it->second;
  NodeRef ref = append(Terminal{value});
  terminals_.emplace(value, ref);
  return ref;
}

NodeRef Diagram::x_terminal() {
  if (!x_terminal_) x_terminal_ = append(XTerminal{});
  return *x_terminal_;
}

NodeRef Diagram::intern(Node node) {
  if (const auto* t = std::get_if<Terminal>(&node)) return terminal(t->value);
  if (std::holds_alternative<XTerminal>(node)) return x_terminal();

  auto& nt = std::get<NonTerminal>(node);
  if (nt.var >= schema_->size()) throw std::invalid_argument("decision node on an unknown variable");
  if (nt.children.size() != static_cast<std::size_t>(schema_->arity(nt.var))) {
    throw std::invalid_argument("decision node on '" + schema_->variables[nt.var].name + "' needs " +
                                std::to_string(schema_->arity(nt.var)) + " children, got " +
                                std::to_string(nt.children.size()));
  }
  for (NodeRef c : nt.children) check_ref(c);

  if (kind_ == DiagramKind::tree) return append(std::move(node));

  const bool redundant =
      std::all_of(nt.children.begin(), nt.children.end(), [&](NodeRef c) { return c == nt.children.front(); });
  if (redundant) return nt.children.front();

  std::vector<std::uint32_t> key;
  key.reserve(nt.children.size() + 1);
  key.push_back(static_cast<std::uint32_t>(nt.var));
  for (NodeRef c : nt.children) key.push_back(c.index_);
  if (auto it = unique_.find(key); it != unique_.end()) return it->second;
  NodeRef ref = append(std::move(node));
  unique_.emplace(std::move(key), ref);
  return ref;
}

NodeRef Diagram::root() const {
  if (!root_) throw std::logic_error("diagram has no root");
  return *root_;
}

void Diagram::set_root(NodeRef ref) {
  check_ref(ref);
  root_ = ref;
}

const Node& Diagram::node(NodeRef ref) const {
  check_ref(ref);
  return nodes_[ref.index_];
}

bool Diagram::is_terminal(NodeRef ref) const { return !std::holds_alternative<NonTerminal>(node(ref)); }

Leaf evaluate(const Diagram& diagram, std::span<const int> assignment) {
  const auto& schema = diagram.schema();
  if (assignment.size() != schema.size()) {
    throw std::invalid_argument("assignment has " + std::to_string(assignment.size()) + " values, expected " +
                                std::to_string(schema.size()));
  }
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (assignment[i] < 0 || assignment[i] >= schema.arity(i)) {
      throw std::invalid_argument("assignment value outside the domain of '" + schema.variables[i].name + "'");
    }
  }
  NodeRef at = diagram.root();
  for (;;) {
    const Node& n = diagram.node(at);
    if (const auto* t = std::get_if<Terminal>(&n)) return t->value;
    if (std::holds_alternative<XTerminal>(n)) return std::nullopt;
    const auto& nt = std::get<NonTerminal>(n);
    at = nt.children[static_cast<std::size_t>(assignment[nt.var])];
  }
}

CostMetrics cost(const Diagram& diagram) {
  CostMetrics m;
  std::map<std::uint32_t, std::size_t> depth;  // longest decision chain below a node
  std::function<std::size_t(NodeRef)> visit = [&](NodeRef ref) -> std::size_t {
    if (auto it = depth.find(ref.index()); it != depth.end()) return it->second;
    const Node& n = diagram.node(ref);
    std::size_t d = 0;
    if (const auto* nt = std::get_if<NonTerminal>(&n)) {
      ++m.nonterminals;
      for (NodeRef c : nt->children) d = std::max(d, visit(c));
      ++d;
    } else {
      ++m.terminals;
    }
    depth.emplace(ref.index(), d);
    return d;
  };
  m.levels = visit(diagram.root());
  return m;
}

std::vector<PathDescriptor> enumerate_paths(const Diagram& diagram) {
  std::vector<PathDescriptor> paths;
  std::vector<PathConstraint> prefix;
  std::function<void(NodeRef)> walk = [&](NodeRef ref) {
    const Node& n = diagram.node(ref);
    if (const auto* nt = std::get_if<NonTerminal>(&n)) {
      for (std::size_t c = 0; c < nt->children.size(); ++c) {
        prefix.push_back({nt->var, static_cast<int>(c)});
        walk(nt->children[c]);
        prefix.pop_back();
      }
      return;
    }
    PathDescriptor p;
    p.constraints = prefix;
    if (const auto* t = std::get_if<Terminal>(&n)) p.leaf = t->value;
    paths.push_back(std::move(p));
  };
  walk(diagram.root());
  return paths;
}

Diagram reduce(const Diagram& diagram) {
  Diagram out(diagram.schema_ptr(), DiagramKind::reduced);
  std::map<std::uint32_t, NodeRef> done;
  std::function<NodeRef(NodeRef)> rebuild = [&](NodeRef ref) -> NodeRef {
    if (auto it = done.find(ref.index()); it != done.end()) return it->second;
    NodeRef result = std::visit(overloaded{
                                    [&](const NonTerminal& nt) {
                                      NonTerminal copy{nt.var, {}};
                                      copy.children.reserve(nt.children.size());
                                      for (NodeRef c : nt.children) copy.children.push_back(rebuild(c));
                                      return out.intern(std::move(copy));
                                    },
                                    [&](const Terminal& t) { return out.terminal(t.value); },
                                    [&](const XTerminal&) { return out.x_terminal(); },
                                },
                                diagram.node(ref));
    done.emplace(ref.index(), result);
    return result;
  };
  out.set_root(rebuild(diagram.root()));
  return out;
}

bool is_free(const Diagram& diagram) {
  // A variable repeats on some path iff a node testing it has a descendant
  // testing it too.
  std::map<std::uint32_t, std::vector<bool>> below;
  bool ok = true;
  std::function<const std::vector<bool>&(NodeRef)> vars_below = [&](NodeRef ref) -> const std::vector<bool>& {
    if (auto it = below.find(ref.index()); it != below.end()) return it->second;
    std::vector<bool> vars(diagram.schema().size(), false);
    if (const auto* nt = std::get_if<NonTerminal>(&diagram.node(ref))) {
      for (NodeRef c : nt->children) {
        const auto& sub = vars_below(c);
        for (std::size_t v = 0; v < vars.size(); ++v) vars[v] = vars[v] || sub[v];
      }
      if (vars[nt->var]) ok = false;
      vars[nt->var] = true;
    }
    return below.emplace(ref.index(), std::move(vars)).first->second;
  };
  vars_below(diagram.root());
  return ok;
}

bool is_canonical(const Diagram& diagram) {
  std::set<std::pair<std::size_t, std::vector<NodeRef>>> seen;
  std::set<std::uint32_t> visited;
  bool ok = true;
  std::function<void(NodeRef)> walk = [&](NodeRef ref) {
    if (!ok || !visited.insert(ref.index()).second) return;
    const auto* nt = std::get_if<NonTerminal>(&diagram.node(ref));
    if (!nt) return;
    const bool redundant = std::all_of(nt->children.begin(), nt->children.end(),
                                       [&](NodeRef c) { return c == nt->children.front(); });
    if (redundant || !seen.emplace(nt->var, nt->children).second) {
      ok = false;
      return;
    }
    for (NodeRef c : nt->children) walk(c);
  };
  walk(diagram.root());
  return ok;
}

}  // namespace infodd
