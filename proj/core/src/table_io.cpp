#include "infodd/table_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace infodd {

using nlohmann::json;

namespace {

json parse_json(std::string_view doc, const char* what) {
  try {
    return json::parse(doc);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("malformed ") + what + ": " + e.what());
  }
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw DataError(where + ": missing '" + key + "'");
  return obj.at(key);
}

int as_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw DataError(where + ": expected an integer");
  return j.get<int>();
}

std::string as_string(const json& j, const std::string& where) {
  if (!j.is_string()) throw DataError(where + ": expected a string");
  return j.get<std::string>();
}

TableSchema schema_from_json(const json& doc) {
  TableSchema schema;
  const json& vars = field(doc, "variables", "document");
  if (!vars.is_array()) throw DataError("'variables' must be an array");
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const std::string where = "variables[" + std::to_string(i) + "]";
    VariableSpec v;
    v.index = i;
    v.name = as_string(field(vars[i], "name", where), where + ".name");
    const json& labels = field(vars[i], "labels", where);
    if (!labels.is_array()) throw DataError(where + ".labels must be an array");
    for (const auto& l : labels) v.value_labels.push_back(as_string(l, where + ".labels"));
    schema.variables.push_back(std::move(v));
  }

  const json& products = field(doc, "products", "document");
  if (!products.is_array()) throw DataError("'products' must be an array");
  std::vector<std::optional<std::string>> labels(products.size());
  for (std::size_t p = 0; p < products.size(); ++p) {
    const std::string where = "products[" + std::to_string(p) + "]";
    const int id = as_int(field(products[p], "id", where), where + ".id");
    if (id < 0 || static_cast<std::size_t>(id) >= products.size()) {
      throw DataError(where + ": product ids must be 0.." + std::to_string(products.size() - 1));
    }
    if (labels[static_cast<std::size_t>(id)]) throw DataError(where + ": duplicate product id " + std::to_string(id));
    labels[static_cast<std::size_t>(id)] = as_string(field(products[p], "label", where), where + ".label");
  }
  for (auto& l : labels) schema.output_labels.push_back(std::move(*l));
  schema.validate();
  return schema;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) {
    auto b = cell.find_first_not_of(" \t\r");
    auto e = cell.find_last_not_of(" \t\r");
    cells.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

int parse_int_cell(const std::string& s, const std::string& where) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw DataError(where + ": '" + s + "' is not an integer");
  }
  return v;
}

}  // namespace

DecisionTable Catalog::table(ConsistencyPolicy policy) const {
  return DecisionTable(schema, expand_entries(*schema, entries), policy);
}

Catalog read_catalog(std::string_view doc, std::string name) {
  const json j = parse_json(doc, "catalog");
  Catalog catalog;
  catalog.name = std::move(name);
  auto schema = std::make_shared<TableSchema>(schema_from_json(j));

  const json& entries = field(j, "entries", "catalog");
  if (!entries.is_array()) throw DataError("'entries' must be an array");
  for (std::size_t e = 0; e < entries.size(); ++e) {
    const std::string where = "entries[" + std::to_string(e) + "]";
    CatalogEntry entry;
    entry.output = as_int(field(entries[e], "product", where), where + ".product");
    if (entry.output < 0 || entry.output >= schema->output_arity()) {
      throw DataError(where + ": unknown product " + std::to_string(entry.output));
    }
    entry.product_label = schema->output_labels[static_cast<std::size_t>(entry.output)];
    const json& cells = field(entries[e], "cells", where);
    if (!cells.is_array()) throw DataError(where + ".cells must be an array");
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const std::string cw = where + ".cells[" + std::to_string(i) + "]";
      std::vector<int> values;
      if (cells[i].is_array()) {
        for (const auto& v : cells[i]) values.push_back(as_int(v, cw));
      } else {
        values.push_back(as_int(cells[i], cw));
      }
      entry.cells.push_back(std::move(values));
    }
    catalog.entries.push_back(std::move(entry));
  }
  catalog.schema = std::move(schema);
  // Validates domains and cell shapes up front.
  (void)expand_entries(*catalog.schema, catalog.entries);
  return catalog;
}

Catalog load_catalog(const std::filesystem::path& path) {
  std::string name = path.filename().string();
  if (auto pos = name.find('.'); pos != std::string::npos) name.resize(pos);
  return read_catalog(read_file(path), name);
}

DecisionTable parse_catalog(std::string_view doc, ConsistencyPolicy policy) {
  return read_catalog(doc).table(policy);
}

TableSchema parse_schema(std::string_view doc) { return schema_from_json(parse_json(doc, "schema")); }

TableSchema load_schema(const std::filesystem::path& path) { return parse_schema(read_file(path)); }

std::string schema_to_json(const TableSchema& schema, int indent) {
  json vars = json::array();
  for (const auto& v : schema.variables) vars.push_back({{"name", v.name}, {"labels", v.value_labels}});
  json products = json::array();
  for (std::size_t b = 0; b < schema.output_labels.size(); ++b) {
    products.push_back({{"id", b}, {"label", schema.output_labels[b]}});
  }
  json doc = {{"variables", std::move(vars)}, {"products", std::move(products)}};
  return doc.dump(indent);
}

DecisionTable parse_table_csv(std::istream& in, std::shared_ptr<const TableSchema> schema,
                              ConsistencyPolicy policy) {
  if (!schema) throw DataError("CSV table without schema");
  std::string line;
  if (!std::getline(in, line)) throw DataError("CSV: missing header row");
  const auto header = split_csv_line(line);
  const std::size_t n = schema->size();
  if (header.size() != n + 1) {
    throw DataError("CSV header has " + std::to_string(header.size()) + " columns, expected " + std::to_string(n + 1));
  }

  // Column c feeds variable column_var[c]; n marks the output column.
  std::vector<std::size_t> column_var(header.size(), n + 1);
  std::set<std::size_t> seen;
  for (std::size_t c = 0; c < header.size(); ++c) {
    const auto& h = header[c];
    if (h == "f") {
      column_var[c] = n;
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        if (h == schema->variables[i].name || h == "x_" + std::to_string(i + 1)) {
          column_var[c] = i;
          break;
        }
      }
    }
    if (column_var[c] > n || !seen.insert(column_var[c]).second) {
      throw DataError("CSV header mismatch at column " + std::to_string(c + 1) + " ('" + h + "')");
    }
  }

  std::vector<Row> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split_csv_line(line);
    const std::string where = "CSV line " + std::to_string(line_no);
    if (cells.size() != header.size()) throw DataError(where + ": wrong number of cells");
    Row row;
    row.values.assign(n, 0);
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const int v = parse_int_cell(cells[c], where);
      if (column_var[c] == n) {
        row.output = v;
      } else {
        row.values[column_var[c]] = v;
      }
    }
    rows.push_back(std::move(row));
  }
  return DecisionTable(std::move(schema), std::move(rows), policy);
}

void write_table_csv(std::ostream& out, const DecisionTable& table) {
  const std::size_t n = table.schema().size();
  for (std::size_t i = 0; i < n; ++i) out << "x_" << (i + 1) << ",";
  out << "f\n";
  for (const auto& r : table.rows()) {
    for (int v : r.values) out << v << ",";
    out << r.output << "\n";
  }
}

std::shared_ptr<const TableSchema> monks_schema() {
  static const auto schema = [] {
    TableSchema s = TableSchema::anonymous({3, 3, 2, 3, 4, 2}, 2);
    for (std::size_t i = 0; i < s.variables.size(); ++i) {
      auto& v = s.variables[i];
      v.name = "a" + std::to_string(i + 1);
      for (std::size_t c = 0; c < v.value_labels.size(); ++c) v.value_labels[c] = std::to_string(c + 1);
    }
    return std::make_shared<const TableSchema>(std::move(s));
  }();
  return schema;
}

DecisionTable parse_monks(std::istream& in, ConsistencyPolicy policy) {
  auto schema = monks_schema();
  std::vector<Row> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream is(line);
    std::vector<std::string> tokens;
    for (std::string t; is >> t;) tokens.push_back(t);
    if (tokens.empty()) continue;
    const std::string where = "Monk's line " + std::to_string(line_no);
    if (tokens.size() != 8) throw DataError(where + ": expected 'class a1..a6 id'");
    Row row;
    row.output = parse_int_cell(tokens[0], where);
    if (row.output != 0 && row.output != 1) throw DataError(where + ": class must be 0 or 1");
    for (std::size_t i = 0; i < 6; ++i) {
      const int v = parse_int_cell(tokens[i + 1], where);
      if (v < 1 || v > schema->arity(i)) {
        throw DataError(where + ": unknown value " + std::to_string(v) + " for a" + std::to_string(i + 1));
      }
      row.values.push_back(v - 1);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DataError("Monk's file has no rows");
  return DecisionTable(std::move(schema), std::move(rows), policy);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace infodd
