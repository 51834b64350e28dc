#include "cscp/report.hpp"

#include <ostream>

#include "cscp/csv.hpp"

namespace cscp::report {

std::string rule_label(const Rule& rule) { return rule.antecedent.join() + "=>" + rule.consequent.join(); }

void write_itemsets(std::ostream& out, const FrequentItemsets& frequent) {
  out << "pass,itemset,support_count,support_pct\n";
  for (const auto& [k, level] : frequent.by_pass) {
    for (const auto& entry : level) {
      const std::string row[] = {std::to_string(k), entry.itemset.join(), std::to_string(entry.support_count),
                                 format_percent(Ratio(entry.support_count, frequent.total_patients))};
      csv::write_row(out, row);
    }
  }
}

void write_rules(std::ostream& out, const RuleSet& rules) {
  out << "antecedent,consequent,support_count,support_pct,confidence_pct\n";
  for (const auto& rule : rules.rules) {
    const std::string row[] = {rule.antecedent.join(), rule.consequent.join(), std::to_string(rule.support_count),
                               format_percent(rule.support), format_percent(rule.confidence)};
    csv::write_row(out, row);
  }
}

void write_stratified(std::ostream& out, const StratifiedReport& report) {
  out << "stratum,itemset,patient_count,support_pct,confidence_pct\n";
  for (const auto& row : report.rows) {
    if (row.rule) {
      const std::string fields[] = {row.stratum, rule_label(*row.rule), std::to_string(row.patient_count),
                                    format_percent(row.rule->support), format_percent(row.rule->confidence)};
      csv::write_row(out, fields);
    } else {
      const std::string fields[] = {row.stratum, "", std::to_string(row.patient_count), "", ""};
      csv::write_row(out, fields);
    }
  }
}

}  // namespace cscp::report
