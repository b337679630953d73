#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "infodd/table.hpp"

namespace infodd {

/// Empirical probabilities over the output values 0..m-1.
struct Distribution {
  std::vector<double> probabilities;
};

struct EntropyReport {
  double h_f = 0.0;
  std::map<std::size_t, double> conditional;
  /// Candidates by increasing conditional entropy, lowest index first on ties.
  std::vector<std::size_t> ranking;
};

/// Two conditional entropies closer than this are treated as a tie.
inline constexpr double kEntropyTieTolerance = 1e-12;

/// probabilities[b] = rows with output b / k. Throws DataError on k = 0.
Distribution output_distribution(const DecisionTable& table);

/// Shannon entropy in bits, with 0 log 0 = 0.
double entropy(const Distribution& dist);
double entropy(std::span<const double> probabilities);

/// Weighted entropy of the cofactors on `var`; empty cofactors are skipped.
double conditional_entropy(const DecisionTable& table, std::size_t var);

/// Throws std::invalid_argument for an empty candidate list.
EntropyReport rank_variables(const DecisionTable& table, std::span<const std::size_t> candidates);

/// All variables of the schema as candidates.
EntropyReport rank_variables(const DecisionTable& table);

}  // namespace infodd
