#include "infodd/table.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>

namespace infodd {

bool operator==(const VariableSpec& a, const VariableSpec& b) {
  return a.index == b.index && a.name == b.name && a.value_labels == b.value_labels;
}

bool operator==(const TableSchema& a, const TableSchema& b) {
  return a.variables == b.variables && a.output_labels == b.output_labels;
}

void TableSchema::validate() const {
  if (variables.empty()) throw DataError("schema has no variables");
  if (output_labels.empty()) throw DataError("schema has no output values");
  std::set<std::string> names;
  for (std::size_t i = 0; i < variables.size(); ++i) {
    const auto& v = variables[i];
    if (v.index != i) throw DataError("variable '" + v.name + "' index does not match its position");
    if (v.arity() < 2) throw DataError("variable '" + v.name + "' needs at least two values");
    if (!names.insert(v.name).second) throw DataError("duplicate variable name '" + v.name + "'");
  }
}

std::string TableSchema::fingerprint() const {
  // FNV-1a over names, labels and arities.
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
    h ^= 0xff;
    h *= 1099511628211ull;
  };
  for (const auto& v : variables) {
    mix(v.name);
    for (const auto& l : v.value_labels) mix(l);
  }
  mix("|");
  for (const auto& l : output_labels) mix(l);
  std::ostringstream os;
  os << "n" << variables.size() << "m" << output_labels.size() << "-" << std::hex << h;
  return os.str();
}

TableSchema TableSchema::anonymous(const std::vector<int>& arities, int output_arity) {
  TableSchema s;
  for (std::size_t i = 0; i < arities.size(); ++i) {
    VariableSpec v;
    v.index = i;
    v.name = "x_" + std::to_string(i + 1);
    for (int c = 0; c < arities[i]; ++c) v.value_labels.push_back(std::to_string(c));
    s.variables.push_back(std::move(v));
  }
  for (int b = 0; b < output_arity; ++b) s.output_labels.push_back(std::to_string(b));
  return s;
}

namespace {

void check_row(const TableSchema& schema, const Row& row, std::size_t line) {
  if (row.values.size() != schema.size()) {
    throw DataError("row " + std::to_string(line) + ": expected " + std::to_string(schema.size()) +
                    " values, got " + std::to_string(row.values.size()));
  }
  for (std::size_t i = 0; i < row.values.size(); ++i) {
    const int v = row.values[i];
    if (v < 0 || v >= schema.arity(i)) {
      throw DataError("row " + std::to_string(line) + ": value " + std::to_string(v) + " outside the domain of '" +
                      schema.variables[i].name + "'");
    }
  }
  if (row.output < 0 || row.output >= schema.output_arity()) {
    throw DataError("row " + std::to_string(line) + ": output " + std::to_string(row.output) + " out of range");
  }
}

void apply_policy(std::vector<Row>& rows, ConsistencyPolicy policy) {
  std::map<std::vector<int>, std::map<int, std::size_t>> outputs;
  for (const auto& r : rows) ++outputs[r.values][r.output];

  std::map<std::vector<int>, int> resolved;
  for (const auto& [values, counts] : outputs) {
    if (counts.size() < 2) continue;
    if (policy == ConsistencyPolicy::strict) {
      std::ostringstream os;
      os << "contradictory rows: inputs (";
      for (std::size_t i = 0; i < values.size(); ++i) os << (i ? "," : "") << values[i];
      os << ") map to outputs";
      for (const auto& [out, n] : counts) os << " " << out;
      throw DataError(os.str());
    }
    int best = counts.begin()->first;
    std::size_t best_n = 0;
    for (const auto& [out, n] : counts) {
      if (n > best_n) {
        best = out;
        best_n = n;
      }
    }
    resolved[values] = best;
  }
  for (auto& r : rows) {
    if (auto it = resolved.find(r.values); it != resolved.end()) r.output = it->second;
  }
}

}  // namespace

DecisionTable::DecisionTable(std::shared_ptr<const TableSchema> schema, std::vector<Row> rows,
                             ConsistencyPolicy policy)
    : schema_(std::move(schema)), rows_(std::move(rows)) {
  if (!schema_) throw DataError("table without schema");
  schema_->validate();
  if (rows_.empty()) throw DataError("decision table has no rows");
  for (std::size_t i = 0; i < rows_.size(); ++i) check_row(*schema_, rows_[i], i + 1);
  apply_policy(rows_, policy);
}

DecisionTable::DecisionTable(CofactorTag, std::shared_ptr<const TableSchema> schema, std::vector<Row> rows)
    : schema_(std::move(schema)), rows_(std::move(rows)) {}

DecisionTable DecisionTable::restrict(std::size_t var, int value) const {
  if (var >= schema_->size()) throw std::out_of_range("restrict: variable index out of range");
  if (value < 0 || value >= schema_->arity(var)) throw std::out_of_range("restrict: value outside the domain");
  std::vector<Row> sub;
  for (const auto& r : rows_) {
    if (r.values[var] == value) sub.push_back(r);
  }
  return DecisionTable(CofactorTag{}, schema_, std::move(sub));
}

Constancy DecisionTable::constant_value() const {
  if (rows_.empty()) return EmptyTable{};
  const int first = rows_.front().output;
  for (const auto& r : rows_) {
    if (r.output != first) return std::monostate{};
  }
  return first;
}

int DecisionTable::distinct_values(std::size_t var) const {
  std::vector<bool> seen(static_cast<std::size_t>(schema_->arity(var)), false);
  int n = 0;
  for (const auto& r : rows_) {
    auto v = static_cast<std::size_t>(r.values[var]);
    if (!seen[v]) {
      seen[v] = true;
      ++n;
    }
  }
  return n;
}

int DecisionTable::majority_output() const {
  if (rows_.empty()) throw std::logic_error("majority_output of an empty table");
  std::vector<std::size_t> counts(static_cast<std::size_t>(schema_->output_arity()), 0);
  for (const auto& r : rows_) ++counts[static_cast<std::size_t>(r.output)];
  return static_cast<int>(std::max_element(counts.begin(), counts.end()) - counts.begin());
}

std::vector<Row> expand_entries(const TableSchema& schema, const std::vector<CatalogEntry>& entries) {
  std::vector<Row> rows;
  for (std::size_t e = 0; e < entries.size(); ++e) {
    const auto& entry = entries[e];
    const std::string where = "entry " + std::to_string(e + 1) + " (" + entry.product_label + ")";
    if (entry.cells.size() != schema.size()) {
      throw DataError(where + ": expected " + std::to_string(schema.size()) + " cells");
    }
    for (std::size_t i = 0; i < entry.cells.size(); ++i) {
      if (entry.cells[i].empty()) throw DataError(where + ": empty cell for '" + schema.variables[i].name + "'");
      for (int v : entry.cells[i]) {
        if (v < 0 || v >= schema.arity(i)) {
          throw DataError(where + ": value " + std::to_string(v) + " outside the domain of '" +
                          schema.variables[i].name + "'");
        }
      }
    }
    // Odometer over the cells, last variable fastest.
    std::vector<std::size_t> digit(entry.cells.size(), 0);
    for (;;) {
      Row row;
      row.output = entry.output;
      row.values.reserve(entry.cells.size());
      for (std::size_t i = 0; i < entry.cells.size(); ++i) row.values.push_back(entry.cells[i][digit[i]]);
      rows.push_back(std::move(row));

      std::size_t pos = entry.cells.size();
      while (pos > 0 && ++digit[pos - 1] == entry.cells[pos - 1].size()) {
        digit[pos - 1] = 0;
        --pos;
      }
      if (pos == 0) break;
    }
  }
  return rows;
}

TableSchema pad_schema(const TableSchema& schema, int arity) {
  TableSchema padded = schema;
  for (auto& v : padded.variables) {
    for (int c = v.arity(); c < arity; ++c) v.value_labels.push_back("pad_" + std::to_string(c));
  }
  return padded;
}

DecisionTable pad_arity(const DecisionTable& table, int arity) {
  auto schema = std::make_shared<const TableSchema>(pad_schema(table.schema(), arity));
  return DecisionTable(std::move(schema), table.rows());
}

}  // namespace infodd
