#pragma once

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "infodd/table.hpp"

namespace infodd {

/// Catalog document:
///
///   {"variables": [{"name": ..., "labels": [...]}, ...],
///    "products":  [{"id": 0, "label": ...}, ...],
///    "entries":   [{"product": 0, "cells": [[v, ...], ...]}, ...]}
///
/// Product ids are the output values 0..m-1. Cells list admissible 0-based
/// values per variable in schema order.
struct Catalog {
  std::string name;
  std::shared_ptr<const TableSchema> schema;
  std::vector<CatalogEntry> entries;

  DecisionTable table(ConsistencyPolicy policy = ConsistencyPolicy::strict) const;
};

Catalog read_catalog(std::string_view doc, std::string name = "catalog");
Catalog load_catalog(const std::filesystem::path& path);

DecisionTable parse_catalog(std::string_view doc, ConsistencyPolicy policy = ConsistencyPolicy::strict);

/// Schema documents are catalogs without `entries`.
TableSchema parse_schema(std::string_view doc);
TableSchema load_schema(const std::filesystem::path& path);

/// {"variables": [...], "products": [...]} in the catalog layout.
std::string schema_to_json(const TableSchema& schema, int indent = -1);

/// CSV with header x_1,...,x_n,f (or the schema's variable names) and
/// integer cells. Row order is preserved.
DecisionTable parse_table_csv(std::istream& in, std::shared_ptr<const TableSchema> schema,
                              ConsistencyPolicy policy = ConsistencyPolicy::strict);
void write_table_csv(std::ostream& out, const DecisionTable& table);

/// Monk's problems layout: "class a1 a2 a3 a4 a5 a6 id" per line, attribute
/// values 1-based on disk. Produces six variables with arities
/// (3,3,2,3,4,2) and a binary output.
DecisionTable parse_monks(std::istream& in, ConsistencyPolicy policy = ConsistencyPolicy::strict);

std::shared_ptr<const TableSchema> monks_schema();

std::string read_file(const std::filesystem::path& path);

}  // namespace infodd
