#include "cscp/strata.hpp"

#include <algorithm>
#include <future>

#include "cscp/errors.hpp"

namespace cscp {

namespace {

struct StratumResult {
  std::vector<StratumRow> rows;
  std::size_t omitted = 0;
};

std::vector<Rule> target_rules(const TransactionTable& sub, const ItemSet& target, std::uint64_t minsup,
                               const Ratio& min_conf, std::size_t& omitted) {
  const std::size_t k = target.size();
  const auto& items = target.items();
  std::vector<ItemSet> antecedents;
  std::vector<ItemSet> consequents;
  const std::uint64_t full_mask = (std::uint64_t{1} << k) - 1;
  for (std::uint64_t mask = 1; mask < full_mask; ++mask) {
    std::vector<DiseaseName> lhs;
    std::vector<DiseaseName> rhs;
    for (std::size_t i = 0; i < k; ++i) ((mask >> i) & 1U ? lhs : rhs).push_back(items[i]);
    antecedents.push_back(canonicalize_itemset(std::move(lhs)));
    consequents.push_back(canonicalize_itemset(std::move(rhs)));
  }

  std::vector<ItemSet> queries = antecedents;
  queries.push_back(target);
  const auto counts = find_support(sub, queries);
  const std::uint64_t pair = counts.back().support_count;

  std::vector<Rule> rules;
  if (pair < minsup) {
    omitted += antecedents.size();
    return rules;
  }
  for (std::size_t i = 0; i < antecedents.size(); ++i) {
    const std::uint64_t ante = counts[i].support_count;
    if (ante == 0) {
      ++omitted;
      continue;
    }
    const auto m = compute_rule_metrics(pair, ante, sub.total_patients());
    if (m.confidence < min_conf) continue;
    rules.push_back({antecedents[i], consequents[i], pair, ante, m.support, m.confidence});
  }
  return rules;
}

StratumResult mine_one(const TransactionTable& table, const Stratum& stratum, const MiningConfig& config,
                       const std::optional<std::vector<ItemSet>>& targets) {
  StratumResult result;
  const TransactionTable sub = table.restrict_to(stratum.patients);
  const std::size_t n = sub.total_patients();

  std::vector<Rule> rules;
  if (n > 0) {
    if (targets) {
      const std::uint64_t minsup = resolve_minsup(config.minsup, n);
      for (const auto& target : *targets) {
        auto found = target_rules(sub, target, minsup, config.min_conf, result.omitted);
        rules.insert(rules.end(), std::make_move_iterator(found.begin()), std::make_move_iterator(found.end()));
      }
      std::sort(rules.begin(), rules.end(), [](const Rule& a, const Rule& b) {
        return std::tie(a.antecedent, a.consequent) < std::tie(b.antecedent, b.consequent);
      });
      rules.erase(std::unique(rules.begin(), rules.end()), rules.end());
    } else {
      rules = derive_rules(mine_frequent(sub, config), sub, config.min_conf).rules;
    }
  }

  if (rules.empty()) {
    result.rows.push_back({stratum.label, n, std::nullopt});
  } else {
    for (auto& rule : rules) result.rows.push_back({stratum.label, n, std::move(rule)});
  }
  return result;
}

void check_partition(const TransactionTable& table, const std::vector<Stratum>& strata) {
  std::size_t covered = 0;
  std::set<PatientId> seen;
  for (const auto& s : strata) {
    for (const auto& p : s.patients) {
      if (!seen.insert(p).second) throw ValidationError("patient " + p.str() + " appears in two strata");
      if (!table.entries().contains(p)) throw ValidationError("stratum patient " + p.str() + " not in the table");
      ++covered;
    }
  }
  if (covered != table.total_patients()) throw ValidationError("strata do not cover every patient");
}

}  // namespace

std::vector<Stratum> stratify(const DemographicsMap& demographics, const std::set<PatientId>& patients,
                              const StratumSpec& spec) {
  spec.validate();
  std::vector<Stratum> strata;
  if (spec.attribute == StratumAttribute::age) {
    for (const auto& band : spec.age_bands) strata.push_back({band.label(), {}});
  } else {
    for (const Sex s : {Sex::female, Sex::male, Sex::other}) strata.push_back({std::string(to_string(s)), {}});
  }
  strata.push_back({std::string(kUnknownStratum), {}});
  auto& unknown = strata.back();

  for (const auto& patient : patients) {
    const auto it = demographics.find(patient);
    Stratum* target = &unknown;
    if (it != demographics.end()) {
      const Demographics& d = it->second;
      if (spec.attribute == StratumAttribute::age) {
        if (d.age) {
          const auto band = std::find_if(spec.age_bands.begin(), spec.age_bands.end(),
                                         [&](const AgeBand& b) { return b.contains(*d.age); });
          if (band != spec.age_bands.end()) target = &strata[static_cast<std::size_t>(band - spec.age_bands.begin())];
        }
      } else if (d.sex) {
        target = &strata[static_cast<std::size_t>(*d.sex)];
      }
    }
    target->patients.insert(patient);
  }
  return strata;
}

std::set<PatientId> patient_ids(const TransactionTable& table) {
  std::set<PatientId> ids;
  for (const auto& [patient, diseases] : table.entries()) ids.insert(ids.end(), patient);
  return ids;
}

std::size_t StratifiedReport::metric_row_count() const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const StratumRow& r) { return r.rule.has_value(); }));
}

StratifiedReport mine_strata(const TransactionTable& table, const std::vector<Stratum>& strata,
                             const StratumSpec& spec, const MiningConfig& config,
                             const std::optional<std::vector<ItemSet>>& targets, unsigned threads) {
  config.validate();
  check_partition(table, strata);
  if (targets) {
    for (const auto& t : *targets) {
      if (t.size() < 2) throw ConfigError("target itemset '" + t.join() + "' needs at least two diseases");
      if (t.size() >= 64) throw ConfigError("target itemset is too large");
    }
  }

  std::vector<StratumResult> results(strata.size());
  if (threads <= 1 || strata.size() <= 1) {
    for (std::size_t i = 0; i < strata.size(); ++i) results[i] = mine_one(table, strata[i], config, targets);
  } else {
    // Each future fills its own slot; merge order is the strata order.
    for (std::size_t start = 0; start < strata.size(); start += threads) {
      std::vector<std::future<StratumResult>> batch;
      const std::size_t stop = std::min(strata.size(), start + threads);
      for (std::size_t i = start; i < stop; ++i) {
        batch.push_back(std::async(std::launch::async, [&, i] { return mine_one(table, strata[i], config, targets); }));
      }
      for (std::size_t i = start; i < stop; ++i) results[i] = batch[i - start].get();
    }
  }

  StratifiedReport report;
  report.spec = spec;
  for (auto& r : results) {
    report.omitted_rows += r.omitted;
    report.rows.insert(report.rows.end(), std::make_move_iterator(r.rows.begin()), std::make_move_iterator(r.rows.end()));
  }
  return report;
}

}  // namespace cscp
