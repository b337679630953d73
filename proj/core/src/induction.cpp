#include "infodd/induction.hpp"

#include <algorithm>
#include <stdexcept>
#include <variant>

#include "infodd/entropy.hpp"
#include "json.hpp"

namespace infodd {

void InductionConfig::validate() const {
  if (iterations < 1) throw std::invalid_argument("iterations must be at least 1");
  if (algorithm == Algorithm::greedy && iterations != 1) {
    throw std::invalid_argument("the greedy algorithm runs exactly one iteration");
  }
}

InductionConfig InductionConfig::greedy(DiagramKind structure) {
  InductionConfig c;
  c.structure = structure;
  return c;
}

InductionConfig InductionConfig::iter(int iterations, DiagramKind structure) {
  InductionConfig c;
  c.algorithm = Algorithm::iter;
  c.iterations = iterations;
  c.structure = structure;
  return c;
}

std::strong_ordering compare_cost(const CostMetrics& a, const CostMetrics& b, CostOrder order) {
  if (order == CostOrder::levels_then_nodes) {
    if (auto c = a.levels <=> b.levels; c != 0) return c;
    return a.nonterminals <=> b.nonterminals;
  }
  if (auto c = a.nonterminals <=> b.nonterminals; c != 0) return c;
  return a.levels <=> b.levels;
}

namespace {

class Builder {
 public:
  Builder(const DecisionTable& table, const InductionConfig& config, std::size_t root_rank)
      : config_(config), root_rank_(root_rank), diagram_(table.schema_ptr(), config.structure),
        used_(table.schema().size(), false) {}

  Diagram run(const DecisionTable& table) {
    diagram_.set_root(build(table, true));
    return std::move(diagram_);
  }

 private:
  NodeRef build(const DecisionTable& table, bool at_root) {
    const Constancy constancy = table.constant_value();
    if (std::holds_alternative<EmptyTable>(constancy)) return diagram_.x_terminal();
    if (const int* c = std::get_if<int>(&constancy)) return diagram_.terminal(*c);

    std::vector<std::size_t> candidates;
    for (std::size_t v = 0; v < used_.size(); ++v) {
      if (!used_[v] && table.distinct_values(v) >= 2) candidates.push_back(v);
    }
    if (candidates.empty()) {
      if (config_.inconsistency == ConsistencyPolicy::majority) return diagram_.terminal(table.majority_output());
      throw DataError("rows with identical inputs disagree on the output; no variable left to separate them");
    }

    const EntropyReport report = rank_variables(table, candidates);
    const std::size_t rank = at_root ? std::min(root_rank_, report.ranking.size()) : 1;
    const std::size_t var = report.ranking[rank - 1];

    const int arity = table.schema().arity(var);
    NonTerminal node{var, {}};
    node.children.reserve(static_cast<std::size_t>(arity));
    used_[var] = true;
    for (int c = 0; c < arity; ++c) node.children.push_back(build(table.restrict(var, c), false));
    used_[var] = false;
    return diagram_.intern(std::move(node));
  }

  const InductionConfig& config_;
  std::size_t root_rank_;
  Diagram diagram_;
  std::vector<bool> used_;
};

}  // namespace

Diagram info_greedy(const DecisionTable& table, const InductionConfig& config) {
  config.validate();
  if (config.algorithm != Algorithm::greedy) throw std::invalid_argument("info_greedy needs a greedy config");
  return Builder(table, config, 1).run(table);
}

Diagram info_iter(const DecisionTable& table, const InductionConfig& config) {
  config.validate();
  if (config.algorithm != Algorithm::iter) throw std::invalid_argument("info_iter needs an iter config");

  std::optional<Diagram> best;
  CostMetrics best_cost;
  for (int t = 1; t <= config.iterations; ++t) {
    Diagram candidate = Builder(table, config, static_cast<std::size_t>(t)).run(table);
    const CostMetrics c = cost(candidate);
    if (!best || compare_cost(c, best_cost, config.criterion) < 0) {
      best = std::move(candidate);
      best_cost = c;
    }
  }
  return std::move(*best);
}

Diagram induce(const DecisionTable& table, const InductionConfig& config) {
  return config.algorithm == Algorithm::greedy ? info_greedy(table, config) : info_iter(table, config);
}

std::string_view to_string(Algorithm a) { return a == Algorithm::greedy ? "greedy" : "iter"; }

std::string_view to_string(CostOrder c) {
  return c == CostOrder::levels_then_nodes ? "levels,nodes" : "nodes,levels";
}

std::string_view to_string(DiagramKind k) { return k == DiagramKind::tree ? "tree" : "dd"; }

Algorithm parse_algorithm(std::string_view s) {
  if (s == "greedy" || s == "GREEDY") return Algorithm::greedy;
  if (s == "iter" || s == "ITER") return Algorithm::iter;
  throw DataError("unknown algorithm '" + std::string(s) + "'");
}

CostOrder parse_cost_order(std::string_view s) {
  if (s == "levels,nodes" || s == "LEVELS_THEN_NODES") return CostOrder::levels_then_nodes;
  if (s == "nodes,levels" || s == "NODES_THEN_LEVELS") return CostOrder::nodes_then_levels;
  throw DataError("unknown cost criterion '" + std::string(s) + "'");
}

DiagramKind parse_structure(std::string_view s) {
  if (s == "tree" || s == "TREE" || s == "dt") return DiagramKind::tree;
  if (s == "dd" || s == "REDUCED" || s == "reduced") return DiagramKind::reduced;
  throw DataError("unknown structure '" + std::string(s) + "'");
}

ConsistencyPolicy parse_policy(std::string_view s) {
  if (s == "strict" || s == "STRICT") return ConsistencyPolicy::strict;
  if (s == "majority" || s == "MAJORITY") return ConsistencyPolicy::majority;
  throw DataError("unknown consistency policy '" + std::string(s) + "'");
}

InductionConfig config_from_json(std::string_view doc) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(doc);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(std::string("malformed config: ") + e.what());
  }
  if (!j.is_object()) throw DataError("config must be a JSON object");
  InductionConfig c;
  try {
    if (j.contains("algorithm")) c.algorithm = parse_algorithm(j.at("algorithm").get<std::string>());
    if (j.contains("iterations")) c.iterations = j.at("iterations").get<int>();
    if (j.contains("structure")) c.structure = parse_structure(j.at("structure").get<std::string>());
    if (j.contains("criterion")) c.criterion = parse_cost_order(j.at("criterion").get<std::string>());
    if (j.contains("tie_break")) {
      const auto tb = j.at("tie_break").get<std::string>();
      if (tb != "LOWEST_INDEX" && tb != "lowest_index") throw DataError("unknown tie_break '" + tb + "'");
    }
    if (j.contains("inconsistency")) c.inconsistency = parse_policy(j.at("inconsistency").get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed config: ") + e.what());
  }
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw DataError(e.what());
  }
  return c;
}

std::string config_to_json(const InductionConfig& config) {
  nlohmann::ordered_json j;
  j["algorithm"] = config.algorithm == Algorithm::greedy ? "GREEDY" : "ITER";
  j["iterations"] = config.iterations;
  j["structure"] = config.structure == DiagramKind::tree ? "TREE" : "REDUCED";
  j["criterion"] = config.criterion == CostOrder::levels_then_nodes ? "LEVELS_THEN_NODES" : "NODES_THEN_LEVELS";
  j["tie_break"] = "LOWEST_INDEX";
  j["inconsistency"] = config.inconsistency == ConsistencyPolicy::strict ? "STRICT" : "MAJORITY";
  return j.dump();
}

}  // namespace infodd
