#include "cscp/oracle.hpp"

#include <algorithm>
#include <bit>

#include "cscp/errors.hpp"

namespace cscp::oracle {

namespace {

std::uint64_t scan_count(const TransactionTable& table, const std::vector<DiseaseName>& items) {
  std::uint64_t count = 0;
  for (const auto& [patient, diseases] : table.entries()) {
    bool all = true;
    for (const auto& item : items) {
      if (diseases.count(item) == 0) {
        all = false;
        break;
      }
    }
    if (all) ++count;
  }
  return count;
}

}  // namespace

FrequentItemsets brute_force_frequent(const TransactionTable& table, std::uint64_t minsup, std::size_t maxk) {
  std::set<DiseaseName> universe_set;
  for (const auto& [patient, diseases] : table.entries()) universe_set.insert(diseases.begin(), diseases.end());
  if (universe_set.size() > kMaxUniverse) {
    throw ValidationError("oracle universe of " + std::to_string(universe_set.size()) + " diseases exceeds " +
                          std::to_string(kMaxUniverse));
  }
  const std::vector<DiseaseName> universe(universe_set.begin(), universe_set.end());

  FrequentItemsets result;
  result.total_patients = table.total_patients();
  result.config.maxpass = std::max<std::size_t>(maxk, 1);
  result.config.minsup = AbsoluteSupport{std::max<std::uint64_t>(minsup, 1)};

  const std::uint32_t subsets = std::uint32_t{1} << universe.size();
  for (std::uint32_t mask = 1; mask < subsets; ++mask) {
    const auto k = static_cast<std::size_t>(std::popcount(mask));
    if (k > maxk) continue;
    std::vector<DiseaseName> items;
    for (std::size_t i = 0; i < universe.size(); ++i) {
      if ((mask >> i) & 1U) items.push_back(universe[i]);
    }
    const std::uint64_t count = scan_count(table, items);
    if (count >= minsup && count > 0) result.by_pass[k].push_back({canonicalize_itemset(std::move(items)), count});
  }
  for (auto& [k, level] : result.by_pass) {
    std::sort(level.begin(), level.end(), [](const ItemsetCount& a, const ItemsetCount& b) { return a.itemset < b.itemset; });
  }
  return result;
}

RuleSet naive_rules(const TransactionTable& table, const FrequentItemsets& frequent, const Ratio& min_conf) {
  RuleSet out;
  out.total_patients = table.total_patients();
  for (const auto& [k, level] : frequent.by_pass) {
    if (k < 2) continue;
    for (const auto& z : level) {
      const auto& items = z.itemset.items();
      const std::uint64_t pair = scan_count(table, items);
      for (std::uint32_t mask = 1; mask + 1 < (std::uint32_t{1} << k); ++mask) {
        std::vector<DiseaseName> lhs;
        std::vector<DiseaseName> rhs;
        for (std::size_t i = 0; i < k; ++i) ((mask >> i) & 1U ? lhs : rhs).push_back(items[i]);
        const std::uint64_t ante = scan_count(table, lhs);
        // pair/ante >= min_conf  <=>  pair * den >= num * ante
        if (static_cast<unsigned __int128>(pair) * min_conf.den() <
            static_cast<unsigned __int128>(min_conf.num()) * ante) {
          continue;
        }
        out.rules.push_back({canonicalize_itemset(std::move(lhs)), canonicalize_itemset(std::move(rhs)), pair, ante,
                             Ratio(pair, out.total_patients), Ratio(pair, ante)});
      }
    }
  }
  std::sort(out.rules.begin(), out.rules.end(), [](const Rule& a, const Rule& b) {
    if (a.antecedent != b.antecedent) return a.antecedent < b.antecedent;
    return a.consequent < b.consequent;
  });
  return out;
}

}  // namespace cscp::oracle
