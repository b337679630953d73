#include "infodd/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace infodd {

namespace {

// Entropy of a histogram with `total` observations.
double histogram_entropy(const std::vector<std::size_t>& counts, std::size_t total) {
  double h = 0.0;
  const double k = static_cast<double>(total);
  for (std::size_t c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / k;
    h -= p * std::log2(p);
  }
  return h;
}

}  // namespace

Distribution output_distribution(const DecisionTable& table) {
  if (table.empty()) throw DataError("output distribution of an empty table");
  std::vector<std::size_t> counts(static_cast<std::size_t>(table.schema().output_arity()), 0);
  for (const auto& r : table.rows()) ++counts[static_cast<std::size_t>(r.output)];
  Distribution d;
  d.probabilities.reserve(counts.size());
  const double k = static_cast<double>(table.size());
  for (std::size_t c : counts) d.probabilities.push_back(static_cast<double>(c) / k);
  return d;
}

double entropy(std::span<const double> probabilities) {
  double h = 0.0;
  for (double p : probabilities) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

double entropy(const Distribution& dist) { return entropy(std::span<const double>(dist.probabilities)); }

double conditional_entropy(const DecisionTable& table, std::size_t var) {
  const auto& schema = table.schema();
  if (var >= schema.size()) throw std::out_of_range("conditional_entropy: variable index out of range");
  if (table.empty()) throw DataError("conditional entropy of an empty table");

  const auto r = static_cast<std::size_t>(schema.arity(var));
  const auto m = static_cast<std::size_t>(schema.output_arity());
  // joint[c * m + b] = rows with values[var] == c and output == b
  std::vector<std::size_t> joint(r * m, 0);
  for (const auto& row : table.rows()) {
    ++joint[static_cast<std::size_t>(row.values[var]) * m + static_cast<std::size_t>(row.output)];
  }

  const double k = static_cast<double>(table.size());
  double h = 0.0;
  std::vector<std::size_t> cofactor(m);
  for (std::size_t c = 0; c < r; ++c) {
    std::copy_n(joint.begin() + static_cast<std::ptrdiff_t>(c * m), m, cofactor.begin());
    const std::size_t kc = std::accumulate(cofactor.begin(), cofactor.end(), std::size_t{0});
    if (kc == 0) continue;
    h += static_cast<double>(kc) / k * histogram_entropy(cofactor, kc);
  }
  return h;
}

EntropyReport rank_variables(const DecisionTable& table, std::span<const std::size_t> candidates) {
  if (candidates.empty()) throw std::invalid_argument("rank_variables: no candidate variables");
  EntropyReport report;
  report.h_f = entropy(output_distribution(table));
  for (std::size_t v : candidates) report.conditional[v] = conditional_entropy(table, v);

  report.ranking.assign(candidates.begin(), candidates.end());
  std::sort(report.ranking.begin(), report.ranking.end());
  report.ranking.erase(std::unique(report.ranking.begin(), report.ranking.end()), report.ranking.end());
  std::stable_sort(report.ranking.begin(), report.ranking.end(), [&](std::size_t a, std::size_t b) {
    return report.conditional.at(a) < report.conditional.at(b) - kEntropyTieTolerance;
  });
  return report;
}

EntropyReport rank_variables(const DecisionTable& table) {
  std::vector<std::size_t> all(table.schema().size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return rank_variables(table, all);
}

}  // namespace infodd
