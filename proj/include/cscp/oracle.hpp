#pragma once

#include <cstdint>

#include "cscp/mining.hpp"
#include "cscp/model.hpp"

namespace cscp::oracle {

inline constexpr std::size_t kMaxUniverse = 20;

/// Exhaustive reference miner: enumerates every subset of the disease
/// universe with 1..maxk items and counts it by scanning each patient's
/// disease set directly. Shares no counting code with mine_frequent.
/// Throws ValidationError when the universe exceeds kMaxUniverse diseases.
FrequentItemsets brute_force_frequent(const TransactionTable& table, std::uint64_t minsup, std::size_t maxk);

/// Reference rule derivation straight from raw counts: every frequent
/// itemset of size >= 2, every non-empty proper antecedent, confidence from a
/// fresh scan.
RuleSet naive_rules(const TransactionTable& table, const FrequentItemsets& frequent, const Ratio& min_conf);

}  // namespace cscp::oracle
