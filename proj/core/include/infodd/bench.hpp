#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "infodd/induction.hpp"
#include "infodd/table.hpp"

namespace infodd {

enum class DatasetFormat { monks, csv, catalog };

struct Dataset {
  std::string name;
  std::filesystem::path path;
  DatasetFormat format = DatasetFormat::monks;
  /// Schema sidecar for CSV datasets.
  std::optional<std::filesystem::path> schema;
};

struct BenchRow {
  std::string dataset;
  std::size_t k = 0;
  Algorithm algorithm = Algorithm::greedy;
  int iterations = 1;
  DiagramKind structure = DiagramKind::tree;
  std::size_t nonterminals = 0;
  std::size_t levels = 0;
  std::size_t terminals = 0;
  double seconds = 0.0;
  bool ok = true;
  std::string error;
};

struct BenchOptions {
  /// 0 keeps native arities; otherwise every variable is padded to this arity.
  int pad_arity = 0;
  ConsistencyPolicy policy = ConsistencyPolicy::majority;
  /// Worker threads; rows are reported in input order regardless.
  unsigned jobs = 1;
};

/// Reference figures for one dataset: N/level/t per column, in the order
/// greedy DT, greedy DD, iter DT, iter DD.
struct ReferenceRow {
  std::string dataset;
  std::size_t k = 0;
  struct Cell {
    std::size_t nodes;
    std::size_t levels;
    double seconds;
  };
  Cell cells[4];
};

/// Published figures for the Monk's and shuttle runs (timings from much
/// older hardware, never compared against ours).
const std::vector<ReferenceRow>& reference_table();
const ReferenceRow* find_reference(const std::string& dataset);

/// Recognizes monks-N.test/.train (named monksNte/monksNtr), *.catalog.json,
/// and *.csv with a *.schema.json sidecar. Known datasets come first in
/// reference order, the rest alphabetically.
std::vector<Dataset> discover_datasets(const std::filesystem::path& dir);

DecisionTable load_dataset(const Dataset& dataset, ConsistencyPolicy policy);

/// One row per (dataset, config, structure). Each config is run as TREE and
/// as REDUCED regardless of its structure field. Unreadable datasets yield
/// rows with ok = false; the run continues.
std::vector<BenchRow> run_benchmark(const std::vector<Dataset>& datasets,
                                    const std::vector<InductionConfig>& configs,
                                    const BenchOptions& options = {});

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

/// Text table with one N/level/t column per (config, structure), a Total row
/// and, where known, the reference figures beneath each dataset.
void write_bench_table(std::ostream& out, const std::vector<BenchRow>& rows);

std::string column_label(const BenchRow& row);

}  // namespace infodd
