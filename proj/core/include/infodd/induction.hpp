#pragma once

#include <compare>
#include <string>
#include <string_view>

#include "infodd/diagram.hpp"
#include "infodd/table.hpp"

namespace infodd {

enum class Algorithm { greedy, iter };

enum class CostOrder {
  levels_then_nodes,
  nodes_then_levels,
};

enum class TieBreak { lowest_index };

struct InductionConfig {
  Algorithm algorithm = Algorithm::greedy;
  int iterations = 1;
  DiagramKind structure = DiagramKind::reduced;
  CostOrder criterion = CostOrder::levels_then_nodes;
  TieBreak tie_break = TieBreak::lowest_index;
  /// What to do when no candidate variable is left but rows still disagree.
  ConsistencyPolicy inconsistency = ConsistencyPolicy::strict;

  /// Throws std::invalid_argument when iterations < 1 or a greedy config asks
  /// for more than one iteration.
  void validate() const;

  static InductionConfig greedy(DiagramKind structure = DiagramKind::reduced);
  static InductionConfig iter(int iterations, DiagramKind structure = DiagramKind::reduced);
};

/// Lexicographic on (levels, nonterminals) or (nonterminals, levels).
std::strong_ordering compare_cost(const CostMetrics& a, const CostMetrics& b, CostOrder order);

/// Recursive construction choosing, at every node, the unused variable with
/// minimal conditional entropy. Constant sub-tables become terminals and
/// empty cofactors the x-terminal.
Diagram info_greedy(const DecisionTable& table, const InductionConfig& config);

/// Best of `iterations` builds under config.criterion. Build t places the
/// rank-t variable (clamped to the candidate count) at the root and is greedy
/// below it; ties keep the earlier build, so one iteration equals info_greedy.
Diagram info_iter(const DecisionTable& table, const InductionConfig& config);

/// Dispatches on config.algorithm.
Diagram induce(const DecisionTable& table, const InductionConfig& config);

/// Reads the InductionConfig fields from a JSON object. Missing fields keep
/// their defaults; throws DataError on unknown enum values.
InductionConfig config_from_json(std::string_view doc);
std::string config_to_json(const InductionConfig& config);

std::string_view to_string(Algorithm a);
std::string_view to_string(CostOrder c);
std::string_view to_string(DiagramKind k);
Algorithm parse_algorithm(std::string_view s);
CostOrder parse_cost_order(std::string_view s);
DiagramKind parse_structure(std::string_view s);
ConsistencyPolicy parse_policy(std::string_view s);

}  // namespace infodd
