#pragma once

#include <iosfwd>
#include <string>

#include "cscp/mining.hpp"
#include "cscp/strata.hpp"

namespace cscp::report {

/// `pass,itemset,support_count,support_pct`, one row per frequent itemset,
/// pass ascending then itemset ascending. Itemsets join diseases with '|'.
void write_itemsets(std::ostream& out, const FrequentItemsets& frequent);

/// `antecedent,consequent,support_count,support_pct,confidence_pct`.
void write_rules(std::ostream& out, const RuleSet& rules);

/// `stratum,itemset,patient_count,support_pct,confidence_pct`. The itemset
/// column holds the directed rule as `antecedent=>consequent` (each side
/// '|'-joined); a stratum without metric rows gets one row with empty
/// itemset and metric columns.
void write_stratified(std::ostream& out, const StratifiedReport& report);

/// "A|B=>C".
std::string rule_label(const Rule& rule);

}  // namespace cscp::report
