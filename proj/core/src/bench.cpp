#include "infodd/bench.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <future>
#include <iomanip>
#include <map>
#include <ostream>
#include <regex>
#include <sstream>

#include "infodd/table_io.hpp"

namespace infodd {

const std::vector<ReferenceRow>& reference_table() {
  static const std::vector<ReferenceRow> rows = {
      {"shuttle", 1695, {{740, 6, 8.31}, {651, 6, 10.25}, {740, 6, 8.31}, {651, 6, 10.25}}},
      {"monks1te", 432, {{10, 3, 0.26}, {10, 3, 0.26}, {10, 3, 0.26}, {10, 3, 0.26}}},
      {"monks1tr", 124, {{17, 5, 0.05}, {15, 5, 0.19}, {13, 3, 0.24}, {11, 3, 1.84}}},
      {"monks2te", 432, {{10, 3, 0.26}, {10, 3, 0.26}, {10, 3, 0.26}, {10, 3, 0.26}}},
      {"monks2tr", 169, {{85, 6, 0.02}, {78, 6, 0.12}, {79, 6, 0.55}, {71, 6, 1.13}}},
      {"monks3te", 432, {{73, 5, 0.56}, {36, 4, 2.88}, {5, 3, 1.68}, {5, 3, 1.68}}},
      {"monks3tr", 122, {{39, 5, 0.07}, {32, 5, 0.75}, {22, 5, 0.62}, {19, 5, 2.39}}},
  };
  return rows;
}

const ReferenceRow* find_reference(const std::string& dataset) {
  for (const auto& r : reference_table()) {
    if (r.dataset == dataset) return &r;
  }
  return nullptr;
}

std::vector<Dataset> discover_datasets(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw DataError("dataset directory " + dir.string() + " does not exist");

  static const std::regex monks_re(R"(monks-([1-3])\.(test|train))");
  std::vector<Dataset> found;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string file = entry.path().filename().string();
    std::smatch m;
    if (std::regex_match(file, m, monks_re)) {
      found.push_back({"monks" + m[1].str() + (m[2] == "test" ? "te" : "tr"), entry.path(), DatasetFormat::monks, {}});
    } else if (file.size() > 13 && file.ends_with(".catalog.json")) {
      found.push_back({file.substr(0, file.size() - 13), entry.path(), DatasetFormat::catalog, {}});
    } else if (file.ends_with(".csv")) {
      const std::string stem = file.substr(0, file.size() - 4);
      const fs::path schema = dir / (stem + ".schema.json");
      if (fs::exists(schema)) found.push_back({stem, entry.path(), DatasetFormat::csv, schema});
    }
  }

  auto order = [](const Dataset& d) {
    const auto& ref = reference_table();
    for (std::size_t i = 0; i < ref.size(); ++i) {
      if (ref[i].dataset == d.name) return i;
    }
    return ref.size();
  };
  std::sort(found.begin(), found.end(), [&](const Dataset& a, const Dataset& b) {
    return std::make_pair(order(a), a.name) < std::make_pair(order(b), b.name);
  });
  return found;
}

DecisionTable load_dataset(const Dataset& dataset, ConsistencyPolicy policy) {
  switch (dataset.format) {
    case DatasetFormat::monks: {
      std::ifstream in(dataset.path);
      if (!in) throw DataError("cannot read " + dataset.path.string());
      return parse_monks(in, policy);
    }
    case DatasetFormat::catalog:
      return load_catalog(dataset.path).table(policy);
    case DatasetFormat::csv: {
      if (!dataset.schema) throw DataError("CSV dataset " + dataset.name + " has no schema");
      auto schema = std::make_shared<const TableSchema>(load_schema(*dataset.schema));
      std::ifstream in(dataset.path);
      if (!in) throw DataError("cannot read " + dataset.path.string());
      return parse_table_csv(in, std::move(schema), policy);
    }
  }
  throw DataError("unknown dataset format");
}

namespace {

std::vector<BenchRow> bench_dataset(const Dataset& dataset, const std::vector<InductionConfig>& configs,
                                    const BenchOptions& options) {
  std::vector<BenchRow> rows;
  auto row_for = [&](const InductionConfig& config, DiagramKind structure) {
    BenchRow r;
    r.dataset = dataset.name;
    r.algorithm = config.algorithm;
    r.iterations = config.iterations;
    r.structure = structure;
    return r;
  };

  std::optional<DecisionTable> table;
  std::string load_error;
  try {
    table = load_dataset(dataset, options.policy);
    if (options.pad_arity > 0) table = pad_arity(*table, options.pad_arity);
  } catch (const std::exception& e) {
    load_error = e.what();
  }

  for (const auto& base : configs) {
    for (DiagramKind structure : {DiagramKind::tree, DiagramKind::reduced}) {
      BenchRow r = row_for(base, structure);
      if (!table) {
        r.ok = false;
        r.error = load_error;
        rows.push_back(std::move(r));
        continue;
      }
      r.k = table->size();
      InductionConfig config = base;
      config.structure = structure;
      try {
        const auto start = std::chrono::steady_clock::now();
        const Diagram d = induce(*table, config);
        const auto stop = std::chrono::steady_clock::now();
        const CostMetrics c = cost(d);
        r.nonterminals = c.nonterminals;
        r.levels = c.levels;
        r.terminals = c.terminals;
        r.seconds = std::chrono::duration<double>(stop - start).count();
      } catch (const std::exception& e) {
        r.ok = false;
        r.error = e.what();
      }
      rows.push_back(std::move(r));
    }
  }
  return rows;
}

std::string cell(std::size_t n, std::size_t levels, double t) {
  std::ostringstream os;
  os << n << "/" << levels << "/" << std::fixed << std::setprecision(2) << t;
  return os.str();
}

}  // namespace

std::vector<BenchRow> run_benchmark(const std::vector<Dataset>& datasets, const std::vector<InductionConfig>& configs,
                                    const BenchOptions& options) {
  std::vector<std::vector<BenchRow>> per_dataset(datasets.size());
  const unsigned jobs = std::max(1u, options.jobs);
  if (jobs == 1) {
    for (std::size_t i = 0; i < datasets.size(); ++i) per_dataset[i] = bench_dataset(datasets[i], configs, options);
  } else {
    for (std::size_t start = 0; start < datasets.size(); start += jobs) {
      std::vector<std::future<std::vector<BenchRow>>> batch;
      const std::size_t end = std::min(datasets.size(), start + jobs);
      for (std::size_t i = start; i < end; ++i) {
        batch.push_back(std::async(std::launch::async, bench_dataset, std::cref(datasets[i]), std::cref(configs),
                                   std::cref(options)));
      }
      for (std::size_t i = start; i < end; ++i) per_dataset[i] = batch[i - start].get();
    }
  }
  std::vector<BenchRow> rows;
  for (auto& group : per_dataset) {
    for (auto& r : group) rows.push_back(std::move(r));
  }
  return rows;
}

std::string column_label(const BenchRow& row) {
  std::string label = row.algorithm == Algorithm::greedy ? "Greedy" : "Iter(" + std::to_string(row.iterations) + ")";
  return label + (row.structure == DiagramKind::tree ? " DT" : " DD");
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "dataset,k,algorithm,iterations,structure,nonterminals,levels,terminals,seconds,status\n";
  for (const auto& r : rows) {
    out << r.dataset << "," << r.k << "," << to_string(r.algorithm) << "," << r.iterations << ","
        << (r.structure == DiagramKind::tree ? "DT" : "DD") << "," << r.nonterminals << "," << r.levels << ","
        << r.terminals << "," << std::fixed << std::setprecision(6) << r.seconds << std::defaultfloat << ","
        << (r.ok ? "ok" : "failed") << "\n";
  }
}

void write_bench_table(std::ostream& out, const std::vector<BenchRow>& rows) {
  std::vector<std::string> columns;
  std::vector<std::string> datasets;
  std::map<std::pair<std::string, std::string>, const BenchRow*> grid;
  for (const auto& r : rows) {
    const std::string col = column_label(r);
    if (std::find(columns.begin(), columns.end(), col) == columns.end()) columns.push_back(col);
    if (std::find(datasets.begin(), datasets.end(), r.dataset) == datasets.end()) datasets.push_back(r.dataset);
    grid[{r.dataset, col}] = &r;
  }

  // Reference figures line up only with the standard four-column layout.
  const bool standard = columns.size() == 4 && columns[0] == "Greedy DT" && columns[1] == "Greedy DD" &&
                        columns[2].starts_with("Iter(") && columns[2].ends_with(" DT") &&
                        columns[3].starts_with("Iter(") && columns[3].ends_with(" DD");

  constexpr int kName = 12;
  constexpr int kK = 7;
  constexpr int kCell = 18;
  out << std::left << std::setw(kName) << "dataset" << std::right << std::setw(kK) << "k";
  for (const auto& c : columns) out << std::setw(kCell) << c;
  out << "\n";
  out << std::string(static_cast<std::size_t>(kName + kK) + columns.size() * kCell, '-') << "\n";

  std::vector<std::size_t> total_n(columns.size(), 0), total_l(columns.size(), 0);
  std::vector<double> total_t(columns.size(), 0.0);
  std::size_t ref_n[4] = {0, 0, 0, 0}, ref_l[4] = {0, 0, 0, 0};
  double ref_t[4] = {0, 0, 0, 0};
  bool any_ref = false;

  for (const auto& ds : datasets) {
    std::size_t k = 0;
    for (const auto& c : columns) {
      if (auto it = grid.find({ds, c}); it != grid.end() && it->second->ok) k = it->second->k;
    }
    out << std::left << std::setw(kName) << ds << std::right << std::setw(kK) << k;
    for (std::size_t i = 0; i < columns.size(); ++i) {
      auto it = grid.find({ds, columns[i]});
      if (it == grid.end()) {
        out << std::setw(kCell) << "-";
      } else if (!it->second->ok) {
        out << std::setw(kCell) << "failed";
      } else {
        const BenchRow& r = *it->second;
        out << std::setw(kCell) << cell(r.nonterminals, r.levels, r.seconds);
        total_n[i] += r.nonterminals;
        total_l[i] += r.levels;
        total_t[i] += r.seconds;
      }
    }
    out << "\n";
    if (const ReferenceRow* ref = standard ? find_reference(ds) : nullptr) {
      any_ref = true;
      out << std::left << std::setw(kName) << "  (ref)" << std::right << std::setw(kK) << ref->k;
      for (int i = 0; i < 4; ++i) {
        out << std::setw(kCell) << cell(ref->cells[i].nodes, ref->cells[i].levels, ref->cells[i].seconds);
        ref_n[i] += ref->cells[i].nodes;
        ref_l[i] += ref->cells[i].levels;
        ref_t[i] += ref->cells[i].seconds;
      }
      out << "\n";
    }
  }
  out << std::string(static_cast<std::size_t>(kName + kK) + columns.size() * kCell, '-') << "\n";
  out << std::left << std::setw(kName) << "Total" << std::right << std::setw(kK) << "";
  for (std::size_t i = 0; i < columns.size(); ++i) out << std::setw(kCell) << cell(total_n[i], total_l[i], total_t[i]);
  out << "\n";
  if (any_ref) {
    out << std::left << std::setw(kName) << "  (ref)" << std::right << std::setw(kK) << "";
    for (int i = 0; i < 4; ++i) out << std::setw(kCell) << cell(ref_n[i], ref_l[i], ref_t[i]);
    out << "\n";
  }
}

}  // namespace infodd
