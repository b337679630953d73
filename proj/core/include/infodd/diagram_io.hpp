#pragma once

#include <memory>
#include <ostream>
#include <string>
#include <string_view>

#include "infodd/diagram.hpp"

namespace infodd {

/// JSON document
///
///   {"kind": "tree"|"dd", "schema_ref": ..., "root": id,
///    "nodes": [{"id", "var", "children"} | {"id", "value"} | {"id", "x": true}]}
///
/// Nodes are numbered in post-order from the root (children before parents),
/// so equal diagrams serialize byte-identically. Unreachable nodes are dropped.
std::string serialize(const Diagram& diagram, int indent = -1);

/// Rebuilds a diagram against `schema`; throws DataError on malformed input,
/// dangling references, cycles, a schema_ref mismatch or, for "dd"
/// documents, nodes that violate the reduction rules.
Diagram deserialize(std::string_view doc, std::shared_ptr<const TableSchema> schema);

/// Same, with an anonymous schema inferred from the children counts. The
/// output arity is one past the largest terminal value.
Diagram deserialize(std::string_view doc);

/// One JSON object per line: {"constraints": [{"var", "value"}...], "leaf": v|null}.
/// Variable names are added when `with_names` is set.
void write_paths_jsonl(std::ostream& out, const Diagram& diagram, bool with_names = true);

}  // namespace infodd
