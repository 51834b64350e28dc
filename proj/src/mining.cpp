#include "cscp/mining.hpp"

#include <algorithm>
#include <thread>

#include "cscp/errors.hpp"

namespace cscp {

namespace {

using ItemId = std::uint32_t;
using IdSet = std::vector<ItemId>;

// Transactions re-expressed as ascending id lists. Ids follow the
// lexicographic order of disease names, so id order equals name order.
struct EncodedTable {
  std::vector<DiseaseName> universe;
  std::vector<IdSet> transactions;

  explicit EncodedTable(const TransactionTable& table) : universe(table.disease_universe()) {
    transactions.reserve(table.total_patients());
    for (const auto& [patient, diseases] : table.entries()) {
      IdSet ids;
      ids.reserve(diseases.size());
      for (const auto& d : diseases) ids.push_back(id_of(d).value());
      transactions.push_back(std::move(ids));
    }
  }

  [[nodiscard]] std::optional<ItemId> id_of(const DiseaseName& name) const {
    const auto it = std::lower_bound(universe.begin(), universe.end(), name);
    if (it == universe.end() || *it != name) return std::nullopt;
    return static_cast<ItemId>(it - universe.begin());
  }

  [[nodiscard]] ItemSet decode(const IdSet& ids) const {
    std::vector<DiseaseName> names;
    names.reserve(ids.size());
    for (const auto id : ids) names.push_back(universe[id]);
    return canonicalize_itemset(std::move(names));
  }
};

std::vector<std::uint64_t> count_range(std::span<const IdSet> transactions, std::span<const IdSet> candidates) {
  std::vector<std::uint64_t> counts(candidates.size(), 0);
  for (const auto& t : transactions) {
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      const auto& cand = candidates[c];
      if (cand.size() <= t.size() && std::includes(t.begin(), t.end(), cand.begin(), cand.end())) ++counts[c];
    }
  }
  return counts;
}

std::vector<std::uint64_t> count_support(std::span<const IdSet> transactions, std::span<const IdSet> candidates,
                                         unsigned threads) {
  threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(transactions.size())));
  if (threads <= 1) return count_range(transactions, candidates);

  std::vector<std::vector<std::uint64_t>> partial(threads);
  std::vector<std::thread> workers;
  const std::size_t chunk = (transactions.size() + threads - 1) / threads;
  for (unsigned w = 0; w < threads; ++w) {
    const std::size_t lo = std::min(transactions.size(), w * chunk);
    const std::size_t hi = std::min(transactions.size(), lo + chunk);
    workers.emplace_back([&, w, lo, hi] { partial[w] = count_range(transactions.subspan(lo, hi - lo), candidates); });
  }
  for (auto& t : workers) t.join();

  std::vector<std::uint64_t> total(candidates.size(), 0);
  for (const auto& p : partial) {
    for (std::size_t i = 0; i < p.size(); ++i) total[i] += p[i];
  }
  return total;
}

// Join + prune over ascending, distinct, same-sized sorted sequences.
template <typename Seq>
std::vector<Seq> join_and_prune(std::span<const Seq> frequent) {
  std::vector<Seq> out;
  if (frequent.empty()) return out;
  const std::size_t k = frequent.front().size();

  // Members sharing a (k-1)-prefix are adjacent because the input is sorted.
  for (std::size_t i = 0; i < frequent.size(); ++i) {
    for (std::size_t j = i + 1; j < frequent.size(); ++j) {
      const auto& a = frequent[i];
      const auto& b = frequent[j];
      if (!std::equal(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(k - 1), b.begin())) break;

      Seq candidate(a.begin(), a.end());
      candidate.push_back(b.back());

      bool all_subsets_frequent = true;
      // Dropping either of the last two items gives a or b; check the rest.
      for (std::size_t drop = 0; drop + 2 < candidate.size() && all_subsets_frequent; ++drop) {
        Seq subset;
        subset.reserve(k);
        for (std::size_t m = 0; m < candidate.size(); ++m) {
          if (m != drop) subset.push_back(candidate[m]);
        }
        all_subsets_frequent = std::binary_search(frequent.begin(), frequent.end(), subset);
      }
      if (all_subsets_frequent) out.push_back(std::move(candidate));
    }
  }
  return out;
}

}  // namespace

std::span<const ItemsetCount> FrequentItemsets::pass(std::size_t k) const {
  const auto it = by_pass.find(k);
  if (it == by_pass.end()) return {};
  return it->second;
}

std::optional<std::uint64_t> FrequentItemsets::count_of(const ItemSet& itemset) const {
  const auto level = pass(itemset.size());
  const auto it = std::lower_bound(level.begin(), level.end(), itemset,
                                   [](const ItemsetCount& c, const ItemSet& s) { return c.itemset < s; });
  if (it == level.end() || it->itemset != itemset) return std::nullopt;
  return it->support_count;
}

std::size_t FrequentItemsets::size() const {
  std::size_t n = 0;
  for (const auto& [k, sets] : by_pass) n += sets.size();
  return n;
}

std::uint64_t resolve_minsup(const MinSupport& minsup, std::uint64_t total_patients) {
  MiningConfig probe;
  probe.minsup = minsup;
  probe.validate();
  if (const auto* abs = std::get_if<AbsoluteSupport>(&minsup)) return abs->count;
  return std::max<std::uint64_t>(1, std::get<RelativeSupport>(minsup).fraction.ceil_mul(total_patients));
}

std::vector<ItemsetCount> find_support(const TransactionTable& table, std::span<const ItemSet> candidates,
                                       unsigned threads) {
  const EncodedTable encoded(table);
  std::vector<IdSet> encoded_candidates;
  std::vector<bool> known(candidates.size(), true);
  encoded_candidates.reserve(candidates.size());
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    IdSet ids;
    for (const auto& name : candidates[c]) {
      const auto id = encoded.id_of(name);
      if (!id) {
        known[c] = false;
        break;
      }
      ids.push_back(*id);
    }
    if (!known[c]) ids.clear();
    encoded_candidates.push_back(std::move(ids));
  }

  const auto counts = count_support(encoded.transactions, encoded_candidates, threads);
  std::vector<ItemsetCount> out;
  out.reserve(candidates.size());
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    out.push_back({candidates[c], known[c] ? counts[c] : 0});
  }
  return out;
}

std::vector<ItemSet> generate_candidates(std::span<const ItemSet> frequent_k) {
  if (frequent_k.empty()) return {};
  const std::size_t k = frequent_k.front().size();
  for (std::size_t i = 0; i < frequent_k.size(); ++i) {
    if (frequent_k[i].size() != k) throw ValidationError("generate_candidates: mixed itemset sizes");
    if (i > 0 && !(frequent_k[i - 1] < frequent_k[i])) {
      throw ValidationError("generate_candidates: input not ascending and distinct");
    }
  }

  std::vector<std::vector<DiseaseName>> seqs;
  seqs.reserve(frequent_k.size());
  for (const auto& s : frequent_k) seqs.push_back(s.items());

  std::vector<ItemSet> out;
  for (auto& seq : join_and_prune<std::vector<DiseaseName>>(seqs)) out.push_back(canonicalize_itemset(std::move(seq)));
  return out;
}

FrequentItemsets mine_frequent(const TransactionTable& table, const MiningConfig& config, unsigned threads) {
  config.validate();
  FrequentItemsets result;
  result.total_patients = table.total_patients();
  result.config = config;
  if (table.empty()) return result;

  const std::uint64_t minsup = resolve_minsup(config.minsup, result.total_patients);
  const EncodedTable encoded(table);

  std::vector<IdSet> candidates;
  candidates.reserve(encoded.universe.size());
  for (ItemId id = 0; id < encoded.universe.size(); ++id) candidates.push_back({id});

  for (std::size_t k = 1; k <= config.maxpass && !candidates.empty(); ++k) {
    const auto counts = count_support(encoded.transactions, candidates, threads);
    std::vector<IdSet> survivors;
    std::vector<ItemsetCount> level;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (counts[c] < minsup) continue;
      level.push_back({encoded.decode(candidates[c]), counts[c]});
      survivors.push_back(std::move(candidates[c]));
    }
    if (level.empty()) break;
    result.by_pass.emplace(k, std::move(level));
    if (k == config.maxpass) break;
    candidates = join_and_prune<IdSet>(survivors);
  }
  return result;
}

RuleMetrics compute_rule_metrics(std::uint64_t pair_count, std::uint64_t antecedent_count, std::uint64_t total) {
  if (antecedent_count == 0) throw UndefinedConfidenceError("antecedent never occurs; confidence is undefined");
  if (total == 0 || pair_count > antecedent_count || antecedent_count > total) {
    throw ValidationError("rule counts must satisfy pair <= antecedent <= total, total >= 1");
  }
  return {Ratio(pair_count, total), Ratio(pair_count, antecedent_count)};
}

RuleSet derive_rules(const FrequentItemsets& frequent, const TransactionTable& table, const Ratio& min_conf) {
  RuleSet result;
  result.total_patients = frequent.total_patients;

  auto support_of = [&](const ItemSet& s) -> std::uint64_t {
    if (auto c = frequent.count_of(s)) return *c;
    const ItemSet one[] = {s};
    return find_support(table, one).front().support_count;
  };

  for (const auto& [k, level] : frequent.by_pass) {
    if (k < 2) continue;
    for (const auto& whole : level) {
      const auto& items = whole.itemset.items();
      if (k >= 64) throw ValidationError("itemsets above 63 items are not supported for rule derivation");
      const std::uint64_t full_mask = (std::uint64_t{1} << k) - 1;
      for (std::uint64_t mask = 1; mask < full_mask; ++mask) {
        std::vector<DiseaseName> lhs;
        std::vector<DiseaseName> rhs;
        for (std::size_t i = 0; i < k; ++i) ((mask >> i) & 1U ? lhs : rhs).push_back(items[i]);
        ItemSet antecedent = canonicalize_itemset(std::move(lhs));
        const std::uint64_t antecedent_count = support_of(antecedent);
        const auto metrics = compute_rule_metrics(whole.support_count, antecedent_count, frequent.total_patients);
        if (metrics.confidence < min_conf) continue;
        result.rules.push_back({std::move(antecedent), canonicalize_itemset(std::move(rhs)), whole.support_count,
                                antecedent_count, metrics.support, metrics.confidence});
      }
    }
  }
  std::sort(result.rules.begin(), result.rules.end(), [](const Rule& a, const Rule& b) {
    return std::tie(a.antecedent, a.consequent) < std::tie(b.antecedent, b.consequent);
  });
  return result;
}

}  // namespace cscp
