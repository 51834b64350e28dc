#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "cscp/model.hpp"
#include "cscp/ratio.hpp"

namespace cscp {

/// Frequent itemsets grouped by pass (= itemset size). Passes with no
/// surviving itemset are absent from `by_pass`; within a pass itemsets are
/// unique and ascending.
struct FrequentItemsets {
  std::map<std::size_t, std::vector<ItemsetCount>> by_pass;
  std::uint64_t total_patients = 0;
  MiningConfig config;

  /// Itemsets of size k; empty when the pass produced nothing.
  [[nodiscard]] std::span<const ItemsetCount> pass(std::size_t k) const;
  [[nodiscard]] std::optional<std::uint64_t> count_of(const ItemSet& itemset) const;
  [[nodiscard]] std::size_t size() const;
  [[nodiscard]] bool empty() const { return by_pass.empty(); }

  /// Same itemsets, counts and T; the config is not compared.
  friend bool operator==(const FrequentItemsets& a, const FrequentItemsets& b) {
    return a.total_patients == b.total_patients && a.by_pass == b.by_pass;
  }
};

struct RuleSet {
  std::vector<Rule> rules;  // ascending by (antecedent, consequent)
  std::uint64_t total_patients = 0;
};

struct RuleMetrics {
  Ratio support;     // pair_count / total
  Ratio confidence;  // pair_count / antecedent_count
};

/// Relative fractions resolve to ceil(f * total); absolute counts pass
/// through. Never returns less than 1. Throws ConfigError on an invalid
/// threshold.
std::uint64_t resolve_minsup(const MinSupport& minsup, std::uint64_t total_patients);

/// Number of transactions containing each candidate, in input order.
/// `threads` > 1 splits the transactions into contiguous partitions whose
/// counts are summed; the result does not depend on the thread count.
std::vector<ItemsetCount> find_support(const TransactionTable& table, std::span<const ItemSet> candidates,
                                       unsigned threads = 1);

/// Apriori join + prune: joins every two k-sets sharing their first k-1
/// items, then drops candidates with an infrequent k-subset. Input must be
/// same-sized, ascending and distinct (ValidationError otherwise).
std::vector<ItemSet> generate_candidates(std::span<const ItemSet> frequent_k);

/// Level-wise mining up to config.maxpass, stopping early at an empty pass.
FrequentItemsets mine_frequent(const TransactionTable& table, const MiningConfig& config, unsigned threads = 1);

/// 100 * pair / total and 100 * pair / antecedent, kept exact.
/// Throws UndefinedConfidenceError when antecedent_count is 0 and
/// ValidationError unless pair <= antecedent <= total.
RuleMetrics compute_rule_metrics(std::uint64_t pair_count, std::uint64_t antecedent_count, std::uint64_t total);

/// Every ordered split of every frequent itemset of size >= 2 into a
/// non-empty antecedent and consequent, kept when confidence >= min_conf.
RuleSet derive_rules(const FrequentItemsets& frequent, const TransactionTable& table, const Ratio& min_conf);

}  // namespace cscp
