#include "infodd/diagram_io.hpp"

#include <functional>
#include <map>
#include <ostream>

#include "json.hpp"

namespace infodd {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string kind_name(DiagramKind kind) { return kind == DiagramKind::tree ? "tree" : "dd"; }

struct DocNode {
  enum class Type { decision, terminal, x } type = Type::x;
  std::size_t var = 0;
  std::vector<long long> children;
  int value = 0;
};

struct ParsedDoc {
  DiagramKind kind = DiagramKind::reduced;
  std::string schema_ref;
  long long root = 0;
  std::map<long long, DocNode> nodes;
};

ParsedDoc parse_doc(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("malformed diagram: ") + e.what());
  }
  if (!doc.is_object()) throw DataError("diagram document must be an object");
  ParsedDoc out;
  try {
    const std::string kind = doc.at("kind").get<std::string>();
    if (kind == "tree") {
      out.kind = DiagramKind::tree;
    } else if (kind == "dd") {
      out.kind = DiagramKind::reduced;
    } else {
      throw DataError("unknown diagram kind '" + kind + "'");
    }
    if (doc.contains("schema_ref")) out.schema_ref = doc.at("schema_ref").get<std::string>();
    out.root = doc.at("root").get<long long>();
    for (const auto& n : doc.at("nodes")) {
      DocNode node;
      const long long id = n.at("id").get<long long>();
      if (n.contains("var")) {
        node.type = DocNode::Type::decision;
        node.var = n.at("var").get<std::size_t>();
        node.children = n.at("children").get<std::vector<long long>>();
      } else if (n.contains("value")) {
        node.type = DocNode::Type::terminal;
        node.value = n.at("value").get<int>();
      } else if (n.value("x", false)) {
        node.type = DocNode::Type::x;
      } else {
        throw DataError("node " + std::to_string(id) + " is neither decision, terminal nor x-terminal");
      }
      if (!out.nodes.emplace(id, std::move(node)).second) {
        throw DataError("duplicate node id " + std::to_string(id));
      }
    }
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed diagram: ") + e.what());
  }
  return out;
}

Diagram build(const ParsedDoc& doc, std::shared_ptr<const TableSchema> schema) {
  Diagram diagram(std::move(schema), doc.kind);
  enum class Mark { active, done };
  std::map<long long, Mark> marks;
  std::map<long long, NodeRef> built;
  std::map<std::uint32_t, long long> origin;  // first document id mapped to a built node

  std::function<NodeRef(long long)> visit = [&](long long id) -> NodeRef {
    auto it = doc.nodes.find(id);
    if (it == doc.nodes.end()) throw DataError("dangling reference to node " + std::to_string(id));
    if (auto m = marks.find(id); m != marks.end()) {
      if (m->second == Mark::active) throw DataError("cycle through node " + std::to_string(id));
      return built.at(id);
    }
    marks[id] = Mark::active;
    const DocNode& n = it->second;
    NodeRef ref;
    try {
      switch (n.type) {
        case DocNode::Type::terminal:
          ref = diagram.terminal(n.value);
          break;
        case DocNode::Type::x:
          ref = diagram.x_terminal();
          break;
        case DocNode::Type::decision: {
          NonTerminal nt{n.var, {}};
          for (long long c : n.children) nt.children.push_back(visit(c));
          const std::size_t before = diagram.stored_nodes();
          ref = diagram.intern(std::move(nt));
          if (diagram.stored_nodes() == before) {
            throw DataError("node " + std::to_string(id) + " violates the reduction rules of a dd document");
          }
          break;
        }
      }
    } catch (const std::invalid_argument& e) {
      throw DataError("node " + std::to_string(id) + ": " + e.what());
    }
    if (n.type != DocNode::Type::decision) {
      auto [o, fresh] = origin.emplace(ref.index(), id);
      if (!fresh && o->second != id) throw DataError("terminal of node " + std::to_string(id) + " listed twice");
    }
    marks[id] = Mark::done;
    built.emplace(id, ref);
    return ref;
  };
  diagram.set_root(visit(doc.root));
  return diagram;
}

}  // namespace

std::string serialize(const Diagram& diagram, int indent) {
  std::map<std::uint32_t, long long> ids;
  ordered_json nodes = ordered_json::array();
  std::function<long long(NodeRef)> emit = [&](NodeRef ref) -> long long {
    if (auto it = ids.find(ref.index()); it != ids.end()) return it->second;
    const Node& n = diagram.node(ref);
    ordered_json entry;
    if (const auto* nt = std::get_if<NonTerminal>(&n)) {
      std::vector<long long> children;
      for (NodeRef c : nt->children) children.push_back(emit(c));
      const long long id = static_cast<long long>(ids.size());
      entry["id"] = id;
      entry["var"] = nt->var;
      entry["children"] = children;
    } else {
      entry["id"] = static_cast<long long>(ids.size());
      if (const auto* t = std::get_if<Terminal>(&n)) {
        entry["value"] = t->value;
      } else {
        entry["x"] = true;
      }
    }
    const long long id = entry["id"].get<long long>();
    ids.emplace(ref.index(), id);
    nodes.push_back(std::move(entry));
    return id;
  };
  const long long root = emit(diagram.root());

  ordered_json doc;
  doc["kind"] = kind_name(diagram.kind());
  doc["schema_ref"] = diagram.schema().fingerprint();
  doc["root"] = root;
  doc["nodes"] = std::move(nodes);
  return doc.dump(indent);
}

Diagram deserialize(std::string_view text, std::shared_ptr<const TableSchema> schema) {
  if (!schema) throw DataError("deserialize: no schema");
  ParsedDoc doc = parse_doc(text);
  if (!doc.schema_ref.empty() && doc.schema_ref != schema->fingerprint()) {
    throw DataError("diagram was built for schema " + doc.schema_ref + ", not " + schema->fingerprint());
  }
  return build(doc, std::move(schema));
}

Diagram deserialize(std::string_view text) {
  ParsedDoc doc = parse_doc(text);
  std::map<std::size_t, int> arity;
  int output_arity = 1;
  for (const auto& [id, n] : doc.nodes) {
    if (n.type == DocNode::Type::decision) {
      auto [it, fresh] = arity.emplace(n.var, static_cast<int>(n.children.size()));
      if (!fresh && it->second != static_cast<int>(n.children.size())) {
        throw DataError("variable " + std::to_string(n.var) + " used with differing child counts");
      }
    } else if (n.type == DocNode::Type::terminal) {
      if (n.value < 0) throw DataError("negative terminal value");
      output_arity = std::max(output_arity, n.value + 1);
    }
  }
  std::vector<int> arities(arity.empty() ? 0 : arity.rbegin()->first + 1, 2);
  for (const auto& [v, r] : arity) arities[v] = r;
  if (arities.empty()) arities.push_back(2);
  auto schema = std::make_shared<const TableSchema>(TableSchema::anonymous(arities, output_arity));
  return build(doc, std::move(schema));
}

void write_paths_jsonl(std::ostream& out, const Diagram& diagram, bool with_names) {
  const auto& schema = diagram.schema();
  for (const auto& p : enumerate_paths(diagram)) {
    ordered_json line;
    ordered_json constraints = ordered_json::array();
    for (const auto& c : p.constraints) {
      ordered_json item;
      item["var"] = c.var;
      item["value"] = c.value;
      if (with_names) {
        item["variable"] = schema.variables[c.var].name;
        item["label"] = schema.variables[c.var].value_labels[static_cast<std::size_t>(c.value)];
      }
      constraints.push_back(std::move(item));
    }
    line["constraints"] = std::move(constraints);
    if (p.leaf) {
      line["leaf"] = *p.leaf;
      if (with_names) line["product"] = schema.output_labels[static_cast<std::size_t>(*p.leaf)];
    } else {
      line["leaf"] = nullptr;
    }
    out << line.dump() << "\n";
  }
}

}  // namespace infodd
