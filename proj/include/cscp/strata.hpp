#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cscp/mining.hpp"
#include "cscp/model.hpp"

namespace cscp {

inline constexpr std::string_view kUnknownStratum = "unknown";

struct Stratum {
  std::string label;
  std::set<PatientId> patients;
};

/// Partitions `patients` by the stratum attribute. Age strata follow the band
/// order, sex strata are female, male, other; a final "unknown" stratum
/// (always present, possibly empty) takes patients without demographics,
/// without the attribute, or with an age outside every band.
std::vector<Stratum> stratify(const DemographicsMap& demographics, const std::set<PatientId>& patients,
                              const StratumSpec& spec);

std::set<PatientId> patient_ids(const TransactionTable& table);

/// One report line. `rule` is empty for a stratum that produced no metric
/// rows, so every stratum shows up at least once. Rule percentages are
/// relative to the stratum's own population.
struct StratumRow {
  std::string stratum;
  std::size_t patient_count = 0;
  std::optional<Rule> rule;

  friend bool operator==(const StratumRow&, const StratumRow&) = default;
};

struct StratifiedReport {
  StratumSpec spec;
  std::vector<StratumRow> rows;
  std::size_t omitted_rows = 0;  // target rules skipped: below minsup or zero antecedent support

  [[nodiscard]] std::size_t metric_row_count() const;
};

/// Mines each stratum on its own sub-table.
///
/// With `targets`, reports every directed rule of each target itemset in
/// every stratum where the itemset reaches the stratum's minsup (relative
/// thresholds resolve against the stratum size). Without targets, mines the
/// stratum and reports all rules derived from it. Strata must partition the
/// table's patients (ValidationError otherwise). Strata may be processed on
/// up to `threads` threads; output order is the strata order regardless.
StratifiedReport mine_strata(const TransactionTable& table, const std::vector<Stratum>& strata,
                             const StratumSpec& spec, const MiningConfig& config,
                             const std::optional<std::vector<ItemSet>>& targets, unsigned threads = 1);

}  // namespace cscp
