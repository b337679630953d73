#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace infodd {

/// Raised for malformed input documents or values that violate a table's
/// schema. The CLI maps it to exit code 2.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct VariableSpec {
  std::size_t index = 0;
  std::string name;
  std::vector<std::string> value_labels;

  int arity() const { return static_cast<int>(value_labels.size()); }
};

/// Ordered variables plus the labels of the output (product) values.
struct TableSchema {
  std::vector<VariableSpec> variables;
  std::vector<std::string> output_labels;

  std::size_t size() const { return variables.size(); }
  int output_arity() const { return static_cast<int>(output_labels.size()); }
  int arity(std::size_t var) const { return variables.at(var).arity(); }

  /// Throws DataError unless every variable has arity >= 2, names are unique,
  /// indices match positions and there is at least one output label.
  void validate() const;

  /// Short stable identifier derived from names, arities and output count.
  std::string fingerprint() const;

  /// Schema with variables named x_1..x_n and numeric labels.
  static TableSchema anonymous(const std::vector<int>& arities, int output_arity);
};

bool operator==(const VariableSpec& a, const VariableSpec& b);
bool operator==(const TableSchema& a, const TableSchema& b);

struct Row {
  std::vector<int> values;
  int output = 0;

  friend bool operator==(const Row&, const Row&) = default;
};

enum class ConsistencyPolicy {
  strict,    ///< contradictory rows abort ingestion
  majority,  ///< contradictory rows take the most frequent output (lowest on ties)
};

/// A row whose cells are sets of admissible values; expands to the
/// Cartesian product of its cells.
struct CatalogEntry {
  std::string product_label;
  int output = 0;
  std::vector<std::vector<int>> cells;
};

/// Marker returned by constant_value() for an empty cofactor.
struct EmptyTable {
  friend bool operator==(EmptyTable, EmptyTable) { return true; }
};

/// nullopt: rows disagree. EmptyTable: no rows. int: the shared output.
using Constancy = std::variant<std::monostate, EmptyTable, int>;

class DecisionTable {
 public:
  /// Validates rows against the schema and applies the consistency policy.
  /// Ingested tables must be non-empty.
  DecisionTable(std::shared_ptr<const TableSchema> schema, std::vector<Row> rows,
                ConsistencyPolicy policy = ConsistencyPolicy::strict);

  const TableSchema& schema() const { return *schema_; }
  const std::shared_ptr<const TableSchema>& schema_ptr() const { return schema_; }
  const std::vector<Row>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }

  /// Cofactor: rows with values[var] == value, in their original order. The
  /// result may be empty.
  DecisionTable restrict(std::size_t var, int value) const;

  /// Shared output of all rows, EmptyTable for k = 0, monostate otherwise.
  Constancy constant_value() const;

  /// Number of distinct values `var` takes across the rows.
  int distinct_values(std::size_t var) const;

  /// Most frequent output, lowest value on ties. Requires a non-empty table.
  int majority_output() const;

  friend bool operator==(const DecisionTable& a, const DecisionTable& b) {
    return *a.schema_ == *b.schema_ && a.rows_ == b.rows_;
  }

 private:
  struct CofactorTag {};
  DecisionTable(CofactorTag, std::shared_ptr<const TableSchema> schema, std::vector<Row> rows);

  std::shared_ptr<const TableSchema> schema_;
  std::vector<Row> rows_;
};

/// Expands catalog entries into rows, one per combination of cell values.
/// The last variable varies fastest.
std::vector<Row> expand_entries(const TableSchema& schema, const std::vector<CatalogEntry>& entries);

/// Copy of `schema` with every variable padded to `arity` values (extra
/// labels "pad_<v>"). Variables already wider are left alone.
TableSchema pad_schema(const TableSchema& schema, int arity);

/// Re-homes a table on a padded schema; rows are unchanged.
DecisionTable pad_arity(const DecisionTable& table, int arity);

}  // namespace infodd
