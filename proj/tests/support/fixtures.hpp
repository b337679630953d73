#pragma once

// Shared fixtures for the unit and acceptance suites: the cars catalog,
// Monk's test sets rebuilt from their target concepts, and random tables
// and trees for property tests.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "infodd/diagram.hpp"
#include "infodd/table.hpp"
#include "infodd/table_io.hpp"

#ifndef INFODD_TEST_DATA_DIR
#error "INFODD_TEST_DATA_DIR must point at the repository data/ directory"
#endif

namespace infodd::testing {

inline std::filesystem::path data_dir() { return INFODD_TEST_DATA_DIR; }

inline Catalog cars_catalog() { return load_catalog(data_dir() / "cars.catalog.json"); }

inline DecisionTable cars_table() { return cars_catalog().table(); }

/// The 19 rows of the cars truth table, transcribed independently of the
/// catalog entries: (x_1..x_8, f).
inline const std::vector<std::vector<int>>& cars_rows() {
  static const std::vector<std::vector<int>> rows = {
      {1, 0, 0, 1, 0, 2, 2, 0, 0}, {1, 1, 0, 1, 0, 2, 2, 0, 0}, {1, 2, 0, 1, 0, 2, 2, 0, 0},
      {1, 3, 0, 1, 0, 2, 2, 0, 0}, {0, 1, 1, 1, 0, 0, 0, 2, 1}, {0, 1, 3, 1, 1, 1, 1, 2, 1},
      {1, 3, 0, 0, 1, 2, 3, 0, 2}, {1, 3, 0, 1, 1, 2, 3, 0, 2}, {1, 3, 2, 1, 1, 2, 3, 0, 2},
      {0, 3, 1, 1, 1, 1, 2, 2, 3}, {0, 3, 3, 0, 0, 3, 1, 1, 4}, {0, 3, 3, 0, 1, 3, 2, 1, 4},
      {0, 2, 1, 0, 0, 1, 2, 0, 5}, {1, 2, 0, 0, 0, 2, 1, 1, 6}, {1, 2, 0, 1, 0, 2, 1, 1, 6},
      {0, 0, 1, 1, 1, 0, 0, 2, 7}, {0, 1, 3, 1, 1, 1, 0, 2, 7}, {0, 2, 3, 1, 1, 1, 0, 2, 7},
      {0, 3, 3, 1, 1, 1, 0, 2, 7},
  };
  return rows;
}

/// Monk's target concepts over 1-based attributes a1..a6.
inline int monks_concept(int problem, const std::vector<int>& a) {
  switch (problem) {
    case 1:
      return (a[0] == a[1] || a[4] == 1) ? 1 : 0;
    case 2: {
      int ones = 0;
      for (int v : a) ones += v == 1;
      return ones == 2 ? 1 : 0;
    }
    default:
      return ((a[4] == 3 && a[3] == 1) || (a[4] != 4 && a[1] != 3)) ? 1 : 0;
  }
}

/// A Monk's test file: every one of the 432 attribute combinations labeled
/// by the target concept, in the on-disk layout.
inline std::string monks_test_file(int problem) {
  std::ostringstream os;
  const int arity[6] = {3, 3, 2, 3, 4, 2};
  std::vector<int> a(6, 1);
  int id = 0;
  for (;;) {
    os << " " << monks_concept(problem, a);
    for (int v : a) os << " " << v;
    os << " data_" << ++id << "\n";
    int pos = 5;
    while (pos >= 0 && ++a[static_cast<std::size_t>(pos)] > arity[pos]) a[static_cast<std::size_t>(pos--)] = 1;
    if (pos < 0) break;
  }
  return os.str();
}

inline DecisionTable monks_test_table(int problem) {
  std::istringstream in(monks_test_file(problem));
  return parse_monks(in);
}

/// Writes monks-{1,2,3}.test into `dir`.
inline void write_monks_test_files(const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (int p = 1; p <= 3; ++p) {
    std::ofstream out(dir / ("monks-" + std::to_string(p) + ".test"));
    out << monks_test_file(p);
  }
}

/// Random consistent table: n variables, arities in [2, max_arity], rows
/// drawn from a random function over a random subset of the input space.
inline DecisionTable random_table(std::mt19937_64& rng, std::size_t n, int max_arity, int outputs,
                                  std::size_t rows) {
  std::uniform_int_distribution<int> arity_dist(2, max_arity);
  std::vector<int> arities(n);
  for (auto& r : arities) r = arity_dist(rng);
  auto schema = std::make_shared<const TableSchema>(TableSchema::anonymous(arities, outputs));

  std::vector<Row> out;
  std::uniform_int_distribution<int> out_dist(0, outputs - 1);
  std::map<std::vector<int>, int> function;
  for (std::size_t i = 0; i < rows; ++i) {
    Row row;
    for (std::size_t v = 0; v < n; ++v) row.values.push_back(std::uniform_int_distribution<int>(0, arities[v] - 1)(rng));
    auto [it, fresh] = function.emplace(row.values, out_dist(rng));
    row.output = it->second;
    out.push_back(std::move(row));
  }
  return DecisionTable(std::move(schema), std::move(out));
}

/// Random free decision tree over `schema`, depth limited by the number of
/// variables. Leaves are terminals or, with small probability, x-terminals.
inline Diagram random_tree(std::mt19937_64& rng, std::shared_ptr<const TableSchema> schema) {
  Diagram d(schema, DiagramKind::tree);
  std::vector<bool> used(schema->size(), false);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> leaf(0, schema->output_arity() - 1);
  std::function<NodeRef(std::size_t)> grow = [&](std::size_t depth) -> NodeRef {
    std::vector<std::size_t> free_vars;
    for (std::size_t v = 0; v < used.size(); ++v) {
      if (!used[v]) free_vars.push_back(v);
    }
    if (free_vars.empty() || coin(rng) < 0.15 + 0.12 * static_cast<double>(depth)) {
      return coin(rng) < 0.1 ? d.x_terminal() : d.terminal(leaf(rng));
    }
    const std::size_t var = free_vars[std::uniform_int_distribution<std::size_t>(0, free_vars.size() - 1)(rng)];
    used[var] = true;
    NonTerminal node{var, {}};
    for (int c = 0; c < schema->arity(var); ++c) node.children.push_back(grow(depth + 1));
    used[var] = false;
    return d.intern(std::move(node));
  };
  d.set_root(grow(0));
  return d;
}

/// Calls fn on every full assignment of the schema.
inline void for_each_assignment(const TableSchema& schema, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> a(schema.size(), 0);
  for (;;) {
    fn(a);
    std::size_t pos = a.size();
    while (pos > 0 && ++a[pos - 1] == schema.arity(pos - 1)) a[--pos] = 0;
    if (pos == 0) break;
  }
}

}  // namespace infodd::testing
