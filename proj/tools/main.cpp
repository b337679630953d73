// infodd: build, analyze, benchmark and navigate entropy-driven decision
// diagrams. Exit codes: 0 success, 1 usage error, 2 data error.

#include <csignal>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "fetch.hpp"
#include "infodd/bench.hpp"
#include "infodd/diagram_io.hpp"
#include "infodd/entropy.hpp"
#include "infodd/induction.hpp"
#include "infodd/navigator.hpp"
#include "infodd/service.hpp"
#include "infodd/table_io.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using namespace infodd;

namespace {

constexpr int kUsageError = 1;
constexpr int kDataError = 2;

// Table input shared by build and analyze.
struct TableSource {
  std::string catalog;
  std::string csv;
  std::string schema;
  std::string monks;
  std::string policy = "strict";
  int pad_arity = 0;

  void add_options(CLI::App* cmd) {
    auto* cat = cmd->add_option("--catalog", catalog, "Catalog JSON (schema and product entries)");
    auto* csv_opt = cmd->add_option("--csv", csv, "Truth table CSV");
    cmd->add_option("--schema", schema, "Schema JSON for --csv")->needs(csv_opt);
    auto* monks_opt = cmd->add_option("--monks", monks, "Monk's problems data file");
    cat->excludes(csv_opt)->excludes(monks_opt);
    csv_opt->excludes(monks_opt);
    cmd->add_option("--policy", policy, "Contradicting rows: strict or majority")
        ->check(CLI::IsMember({"strict", "majority"}));
    cmd->add_option("--pad-arity", pad_arity, "Widen every variable to this arity")->check(CLI::NonNegativeNumber);
  }

  DecisionTable load() const {
    const ConsistencyPolicy p = parse_policy(policy);
    std::optional<DecisionTable> table;
    if (!catalog.empty()) {
      table = load_catalog(catalog).table(p);
    } else if (!csv.empty()) {
      if (schema.empty()) throw CLI::RequiredError("--schema");
      auto s = std::make_shared<const TableSchema>(load_schema(schema));
      std::ifstream in(csv);
      if (!in) throw DataError("cannot read " + csv);
      table = parse_table_csv(in, std::move(s), p);
    } else if (!monks.empty()) {
      std::ifstream in(monks);
      if (!in) throw DataError("cannot read " + monks);
      table = parse_monks(in, p);
    } else {
      throw CLI::RequiredError("--catalog, --csv or --monks");
    }
    if (pad_arity > 0) table = infodd::pad_arity(*table, pad_arity);
    return std::move(*table);
  }
};

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  out << text << "\n";
}

std::shared_ptr<const Diagram> load_diagram(const std::string& path, const std::shared_ptr<const TableSchema>& schema) {
  const std::string text = read_file(path);
  return std::make_shared<const Diagram>(schema ? deserialize(text, schema) : deserialize(text));
}

int run_build(const TableSource& source, const std::string& config_path, const std::string& algo, int iters,
              const std::string& structure, const std::string& criterion, const std::string& out) {
  InductionConfig config;
  if (!config_path.empty()) config = config_from_json(read_file(config_path));
  if (!algo.empty()) config.algorithm = parse_algorithm(algo);
  if (iters > 0) config.iterations = iters;
  if (config.algorithm == Algorithm::iter && iters == 0 && config_path.empty()) config.iterations = 10;
  if (!structure.empty()) config.structure = parse_structure(structure);
  if (!criterion.empty()) config.criterion = parse_cost_order(criterion);
  config.inconsistency = parse_policy(source.policy);
  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    throw CLI::ValidationError("--iters", e.what());
  }

  const DecisionTable table = source.load();
  const Diagram d = induce(table, config);
  write_output(out, serialize(d, 2));
  const CostMetrics c = cost(d);
  std::cerr << to_string(config.algorithm) << " " << to_string(config.structure) << ": " << c.nonterminals
            << " non-terminals, " << c.levels << " levels, " << c.terminals << " terminals (k = " << table.size()
            << ")\n";
  return 0;
}

int run_analyze(const TableSource& source, const std::string& out) {
  const DecisionTable table = source.load();
  const EntropyReport report = rank_variables(table);
  const TableSchema& schema = table.schema();
  nlohmann::ordered_json j;
  j["k"] = table.size();
  j["distribution"] = output_distribution(table).probabilities;
  j["h_f"] = report.h_f;
  nlohmann::ordered_json conditional = nlohmann::ordered_json::object();
  for (const auto& [v, h] : report.conditional) conditional[schema.variables[v].name] = h;
  j["conditional"] = std::move(conditional);
  nlohmann::ordered_json ranking = nlohmann::ordered_json::array();
  for (std::size_t v : report.ranking) ranking.push_back(schema.variables[v].name);
  j["ranking"] = std::move(ranking);
  write_output(out, j.dump(2));
  return 0;
}

int run_bench(const std::string& dir, int iters, const std::string& report, const std::string& criterion,
              const std::string& policy, int pad, unsigned jobs) {
  const auto datasets = discover_datasets(dir);
  InductionConfig iter = InductionConfig::iter(iters);
  iter.criterion = parse_cost_order(criterion);
  std::vector<InductionConfig> configs = {InductionConfig::greedy(), iter};
  BenchOptions options;
  options.pad_arity = pad;
  options.policy = parse_policy(policy);
  options.jobs = jobs;
  const auto rows = run_benchmark(datasets, configs, options);
  write_bench_table(std::cout, rows);
  if (!report.empty()) {
    std::ofstream out(report);
    if (!out) throw DataError("cannot write " + report);
    write_bench_csv(out, rows);
  }
  for (const auto& r : rows) {
    if (!r.ok) std::cerr << r.dataset << " " << column_label(r) << ": " << r.error << "\n";
  }
  return 0;
}

int run_paths(const std::string& diagram_path, const std::string& catalog_path) {
  std::shared_ptr<const TableSchema> schema;
  if (!catalog_path.empty()) schema = std::make_shared<const TableSchema>(load_schema(catalog_path));
  const auto d = load_diagram(diagram_path, schema);
  write_paths_jsonl(std::cout, *d, schema != nullptr);
  return 0;
}

HttpServer* g_server = nullptr;

extern "C" void on_signal(int) {
  if (g_server) g_server->stop();
}

int run_serve(const std::string& diagram_path, const std::string& catalog_path, const std::string& host, int port,
              const std::string& static_dir) {
  const Catalog catalog = load_catalog(catalog_path);
  const auto d = load_diagram(diagram_path, catalog.schema);
  NavigatorService service({{catalog.name, catalog.schema, d}});
  std::optional<fs::path> assets;
  if (!static_dir.empty()) {
    if (!fs::is_directory(static_dir)) throw DataError("static directory " + static_dir + " does not exist");
    assets = fs::path(static_dir);
  }
  HttpServer server(service, assets);
  const int bound = server.bind(host, port);
  if (bound < 0) throw DataError("cannot bind " + host + ":" + std::to_string(port));
  std::cout << "serving " << catalog.name << " on http://" << host << ":" << bound << std::endl;
  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  server.listen_after_bind();
  g_server = nullptr;
  return 0;
}

void print_step(const Session& s) {
  if (s.status() == SessionStatus::question) {
    const QuestionView q = s.question();
    std::cout << "\n[" << q.depth + 1 << "] " << q.variable << "?\n";
    for (std::size_t i = 0; i < q.options.size(); ++i) std::cout << "  " << i << ") " << q.options[i] << "\n";
    std::cout << "answer number, u = undo, r = restart, q = quit> " << std::flush;
  } else {
    const ResultView r = s.result();
    std::cout << "\n" << (r.no_match() ? "no product matches your choices" : "result: " + r.label) << "\n";
    std::cout << "u = undo, r = restart, q = quit> " << std::flush;
  }
}

int run_navigate(const std::string& diagram_path, const std::string& catalog_path) {
  const Catalog catalog = load_catalog(catalog_path);
  Session session("terminal", load_diagram(diagram_path, catalog.schema));
  print_step(session);
  for (std::string line; std::getline(std::cin, line);) {
    line.erase(0, line.find_first_not_of(" \t"));
    line.erase(line.find_last_not_of(" \t\r") + 1);
    try {
      if (line == "q") break;
      if (line == "u") {
        session.undo();
      } else if (line == "r") {
        session.restart();
      } else {
        int value = -1;
        std::istringstream in(line);
        if (!(in >> value) || !in.eof()) {
          std::cout << "expected a number, u, r or q\n";
        } else {
          session.answer(value);
        }
      }
    } catch (const SessionError& e) {
      std::cout << e.what() << "\n";
    }
    print_step(session);
  }
  std::cout << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropy-driven decision trees and diagrams for guided product selection"};
  app.require_subcommand(1);

  TableSource build_source;
  std::string build_config, build_algo, build_structure, build_criterion, build_out;
  int build_iters = 0;
  auto* build = app.add_subcommand("build", "Induce a decision tree or diagram from a table");
  build_source.add_options(build);
  build->add_option("--config", build_config, "InductionConfig JSON; flags override its fields");
  build->add_option("--algo", build_algo, "greedy or iter")->check(CLI::IsMember({"greedy", "iter"}));
  build->add_option("--iters", build_iters, "Iterations for iter (default 10)")->check(CLI::PositiveNumber);
  build->add_option("--structure", build_structure, "tree or dd")->check(CLI::IsMember({"tree", "dd"}));
  build->add_option("--criterion", build_criterion, "levels,nodes or nodes,levels")
      ->check(CLI::IsMember({"levels,nodes", "nodes,levels"}));
  build->add_option("--out", build_out, "Output diagram JSON (default stdout)");

  TableSource analyze_source;
  std::string analyze_out;
  auto* analyze = app.add_subcommand("analyze", "Output entropy and conditional entropies per variable");
  analyze_source.add_options(analyze);
  analyze->add_option("--out", analyze_out, "Output JSON (default stdout)");

  std::string bench_dir, bench_report, bench_criterion = "nodes,levels", bench_policy = "majority";
  int bench_iters = 10, bench_pad = 0;
  unsigned bench_jobs = 1;
  auto* bench = app.add_subcommand("bench", "Greedy and iterated builds, tree and diagram, per dataset");
  bench->add_option("--datasets", bench_dir, "Directory with monks-N.test/.train, *.catalog.json, *.csv")
      ->required();
  bench->add_option("--iters", bench_iters, "Iterations for the iterated column")->check(CLI::PositiveNumber);
  bench->add_option("--report", bench_report, "CSV report path");
  bench->add_option("--criterion", bench_criterion, "Cost order for the iterated builds")
      ->check(CLI::IsMember({"levels,nodes", "nodes,levels"}));
  bench->add_option("--policy", bench_policy, "Contradicting rows: strict or majority")
      ->check(CLI::IsMember({"strict", "majority"}));
  bench->add_option("--pad-arity", bench_pad, "Widen every variable to this arity")->check(CLI::NonNegativeNumber);
  bench->add_option("--jobs", bench_jobs, "Datasets processed in parallel")->check(CLI::PositiveNumber);

  std::string paths_diagram, paths_catalog;
  auto* paths = app.add_subcommand("paths", "List every root-to-terminal path as JSON lines");
  paths->add_option("--diagram", paths_diagram, "Diagram JSON")->required();
  paths->add_option("--catalog", paths_catalog, "Catalog or schema JSON for names and labels");

  std::string serve_diagram, serve_catalog, serve_host = "127.0.0.1", serve_static;
  int serve_port = 8080;
  auto* serve = app.add_subcommand("serve", "Run the navigator HTTP API");
  serve->add_option("--diagram", serve_diagram, "Diagram JSON")->required();
  serve->add_option("--catalog", serve_catalog, "Catalog JSON")->required();
  serve->add_option("--host", serve_host, "Bind address");
  serve->add_option("--port", serve_port, "Port, 0 for any")->check(CLI::Range(0, 65535));
  serve->add_option("--static", serve_static, "Directory of UI assets to serve at /");

  std::string nav_diagram, nav_catalog;
  auto* navigate = app.add_subcommand("navigate", "Interactive question-at-a-time session on the terminal");
  navigate->add_option("--diagram", nav_diagram, "Diagram JSON")->required();
  navigate->add_option("--catalog", nav_catalog, "Catalog JSON")->required();

  tools::FetchOptions fetch_options;
  bool no_verify = false;
  auto* fetch = app.add_subcommand("fetch", "Download the Monk's datasets and check their pinned digests");
  fetch->add_option("--dest", fetch_options.dest, "Target directory")->required();
  fetch->add_option("--mirror", fetch_options.mirror, "Base URL or local directory")->capture_default_str();
  fetch->add_flag("--no-verify", no_verify, "Skip digest verification");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*build) return run_build(build_source, build_config, build_algo, build_iters, build_structure, build_criterion, build_out);
    if (*analyze) return run_analyze(analyze_source, analyze_out);
    if (*bench) return run_bench(bench_dir, bench_iters, bench_report, bench_criterion, bench_policy, bench_pad, bench_jobs);
    if (*paths) return run_paths(paths_diagram, paths_catalog);
    if (*serve) return run_serve(serve_diagram, serve_catalog, serve_host, serve_port, serve_static);
    if (*navigate) return run_navigate(nav_diagram, nav_catalog);
    if (*fetch) {
      fetch_options.verify = !no_verify;
      const int failures = tools::fetch_monks(fetch_options, std::cerr);
      std::cerr << "shuttle is not fetched; place a discretized copy in the dataset directory as shuttle.csv "
                   "with shuttle.schema.json\n";
      return failures == 0 ? 0 : kDataError;
    }
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDataError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDataError;
  }
  return kUsageError;
}
