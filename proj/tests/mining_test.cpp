#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "cscp/errors.hpp"
#include "cscp/mining.hpp"
#include "cscp/oracle.hpp"
#include "test_support.hpp"

using namespace cscp;
using cscp::testing::make_table;

namespace {

MiningConfig config(std::uint64_t minsup, std::size_t maxpass) {
  MiningConfig c;
  c.minsup = AbsoluteSupport{minsup};
  c.maxpass = maxpass;
  return c;
}

std::vector<std::uint64_t> counts_of(const std::vector<ItemsetCount>& v) {
  std::vector<std::uint64_t> out;
  for (const auto& c : v) out.push_back(c.support_count);
  return out;
}

}  // namespace

TEST_CASE("resolve_minsup") {
  CHECK(resolve_minsup(RelativeSupport{Ratio(1, 100)}, 1000) == 10);
  CHECK(resolve_minsup(AbsoluteSupport{9}, 1000) == 9);
  CHECK(resolve_minsup(RelativeSupport{Ratio::parse_decimal("0.005")}, 1000) == 5);
  CHECK(resolve_minsup(RelativeSupport{Ratio(1, 100)}, 1001) == 11);
  CHECK(resolve_minsup(RelativeSupport{Ratio(1, 1000)}, 1) == 1);
  CHECK(resolve_minsup(RelativeSupport{Ratio(1, 2)}, 0) == 1);
  CHECK_THROWS_AS(resolve_minsup(RelativeSupport{Ratio(101, 100)}, 10), ConfigError);
  CHECK_THROWS_AS(resolve_minsup(RelativeSupport{Ratio(0, 1)}, 10), ConfigError);
  CHECK_THROWS_AS(resolve_minsup(AbsoluteSupport{0}, 10), ConfigError);
}

TEST_CASE("find_support counts superset transactions") {
  const auto table = make_table({{"P1", {"A", "B"}}, {"P2", {"A"}}, {"P3", {"B", "C"}}});
  const std::vector<ItemSet> cands = {make_itemset({"A"}), make_itemset({"B"}), make_itemset({"A", "B"})};
  const auto got = find_support(table, cands);
  // Hand enumeration, cross-checked by the oracle's exhaustive scan.
  CHECK(counts_of(got) == std::vector<std::uint64_t>{2, 2, 1});
  const auto brute = oracle::brute_force_frequent(table, 1, 2);
  for (const auto& c : got) CHECK(brute.count_of(c.itemset) == c.support_count);
  CHECK(got[2].itemset == cands[2]);

  const std::vector<ItemSet> absent = {make_itemset({"Z"}), make_itemset({"A", "Z"})};
  CHECK(counts_of(find_support(table, absent)) == std::vector<std::uint64_t>{0, 0});

  const auto single = make_table({{"P1", {"X", "Y"}}});
  const std::vector<ItemSet> xy = {make_itemset({"X", "Y"})};
  CHECK(find_support(single, xy).front().support_count == 1);
}

TEST_CASE("find_support is independent of thread count") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto table = testing::random_table(rng, 10, 300);
    const auto universe = table.disease_universe();
    std::vector<ItemSet> cands;
    for (std::size_t i = 0; i < universe.size(); ++i) {
      for (std::size_t j = i + 1; j < universe.size(); ++j) cands.push_back(canonicalize_itemset({universe[i], universe[j]}));
    }
    const auto base = find_support(table, cands, 1);
    for (unsigned t : {2U, 3U, 7U, 64U}) CHECK(find_support(table, cands, t) == base);
  }
}

TEST_CASE("generate_candidates joins and prunes") {
  const std::vector<ItemSet> singles = {make_itemset({"A"}), make_itemset({"B"}), make_itemset({"C"})};
  CHECK(generate_candidates(singles) ==
        std::vector<ItemSet>{make_itemset({"A", "B"}), make_itemset({"A", "C"}), make_itemset({"B", "C"})});

  // {A,B,C} joins from {A,B} and {A,C}, but its subset {B,C} is missing.
  const std::vector<ItemSet> two = {make_itemset({"A", "B"}), make_itemset({"A", "C"})};
  CHECK(generate_candidates(two).empty());

  const std::vector<ItemSet> three = {make_itemset({"A", "B"}), make_itemset({"A", "C"}), make_itemset({"B", "C"})};
  CHECK(generate_candidates(three) == std::vector<ItemSet>{make_itemset({"A", "B", "C"})});

  CHECK(generate_candidates(std::vector<ItemSet>{}).empty());

  const std::vector<ItemSet> mixed = {make_itemset({"A"}), make_itemset({"A", "B"})};
  CHECK_THROWS_AS(generate_candidates(mixed), ValidationError);
  const std::vector<ItemSet> unsorted = {make_itemset({"B"}), make_itemset({"A"})};
  CHECK_THROWS_AS(generate_candidates(unsorted), ValidationError);
}

TEST_CASE("generate_candidates matches exhaustive join+prune definition") {
  // Reference: every (k+1)-superset of two members whose k-subsets are all members.
  std::mt19937_64 rng(5);
  const std::vector<std::string> pool = {"A", "B", "C", "D", "E", "F"};
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 1 + rng() % 3;
    std::set<ItemSet> members;
    for (int m = 0; m < 12; ++m) {
      std::vector<DiseaseName> names;
      while (names.size() < k) {
        DiseaseName d(pool[rng() % pool.size()]);
        if (std::find(names.begin(), names.end(), d) == names.end()) names.push_back(d);
      }
      members.insert(canonicalize_itemset(names));
    }
    const std::vector<ItemSet> input(members.begin(), members.end());

    std::set<ItemSet> expected;
    for (const auto& a : input) {
      for (const auto& extra : pool) {
        std::vector<DiseaseName> names = a.items();
        DiseaseName d(extra);
        if (std::find(names.begin(), names.end(), d) != names.end()) continue;
        names.push_back(d);
        const auto cand = canonicalize_itemset(names);
        bool ok = true;
        for (std::size_t drop = 0; drop < cand.size(); ++drop) {
          std::vector<DiseaseName> sub;
          for (std::size_t i = 0; i < cand.size(); ++i) {
            if (i != drop) sub.push_back(cand.items()[i]);
          }
          ok = ok && members.contains(canonicalize_itemset(sub));
        }
        if (ok) expected.insert(cand);
      }
    }
    CHECK(generate_candidates(input) == std::vector<ItemSet>(expected.begin(), expected.end()));
  }
}

TEST_CASE("mine_frequent small example") {
  const auto table = make_table({{"P1", {"A", "B"}}, {"P2", {"A", "B"}}, {"P3", {"A"}}});
  const auto got = mine_frequent(table, config(2, 2));
  REQUIRE(got.by_pass.size() == 2);
  CHECK(got.pass(1).size() == 2);
  CHECK(got.count_of(make_itemset({"A"})) == 3);
  CHECK(got.count_of(make_itemset({"B"})) == 2);
  CHECK(got.count_of(make_itemset({"A", "B"})) == 2);
  CHECK(got == oracle::brute_force_frequent(table, 2, 2));
}

TEST_CASE("mine_frequent boundaries") {
  const auto table = make_table({{"P1", {"A", "B"}}, {"P2", {"C"}}, {"P3", {"A"}}});
  const auto singles = mine_frequent(table, config(1, 1));
  CHECK(singles.by_pass.size() == 1);
  CHECK(singles.pass(1).size() == 3);

  CHECK(mine_frequent(table, config(4, 3)).empty());

  const auto empty = mine_frequent(TransactionTable{}, config(1, 3));
  CHECK(empty.empty());
  CHECK(empty.total_patients == 0);

  MiningConfig bad = config(1, 0);
  CHECK_THROWS_AS(mine_frequent(table, bad), ConfigError);
}

TEST_CASE("mined output is downward closed, anti-monotone and thread independent") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 60; ++trial) {
    const auto table = testing::random_table(rng, 9, 120);
    const auto cfg = config(1 + rng() % 6, 1 + rng() % 4);
    const auto got = mine_frequent(table, cfg);
    CHECK(mine_frequent(table, cfg, 4) == got);
    for (const auto& [k, level] : got.by_pass) {
      CHECK(std::is_sorted(level.begin(), level.end(),
                           [](const ItemsetCount& a, const ItemsetCount& b) { return a.itemset < b.itemset; }));
      for (const auto& entry : level) {
        CHECK(entry.pass() == k);
        if (k == 1) continue;
        for (std::size_t drop = 0; drop < k; ++drop) {
          std::vector<DiseaseName> sub;
          for (std::size_t i = 0; i < k; ++i) {
            if (i != drop) sub.push_back(entry.itemset.items()[i]);
          }
          const auto parent = got.count_of(canonicalize_itemset(sub));
          REQUIRE(parent.has_value());
          CHECK(*parent >= entry.support_count);
        }
      }
    }
  }
}

TEST_CASE("compute_rule_metrics") {
  auto m = compute_rule_metrics(26, 305, 1000);
  CHECK(format_percent(m.support) == "2.60");
  CHECK(format_percent(m.confidence) == "8.52");
  m = compute_rule_metrics(10, 549, 1000);
  CHECK(format_percent(m.support) == "1.00");
  CHECK(format_percent(m.confidence) == "1.82");
  m = compute_rule_metrics(7, 7, 7);
  CHECK(format_percent(m.support) == "100.00");
  CHECK(format_percent(m.confidence) == "100.00");
  CHECK(m.confidence == Ratio(1, 1));

  CHECK_THROWS_AS(compute_rule_metrics(0, 0, 10), UndefinedConfidenceError);
  CHECK_THROWS_AS(compute_rule_metrics(5, 4, 10), ValidationError);
  CHECK_THROWS_AS(compute_rule_metrics(1, 11, 10), ValidationError);
}

TEST_CASE("derive_rules emits both directions of a pair") {
  // 1000 patients: A in 305, B in 536, both in 26.
  TransactionTable::Entries entries;
  for (int i = 1; i <= 1000; ++i) {
    std::set<DiseaseName> ds;
    if (i <= 305) ds.insert(DiseaseName("A"));
    if (i > 279 && i <= 279 + 536) ds.insert(DiseaseName("B"));
    if (ds.empty()) ds.insert(DiseaseName("C"));
    entries.emplace(PatientId("P" + std::to_string(10000 + i)), ds);
  }
  const TransactionTable table(std::move(entries));
  auto frequent = mine_frequent(table, config(20, 2));
  REQUIRE(frequent.count_of(make_itemset({"A", "B"})) == 26);

  const auto rules = derive_rules(frequent, table, Ratio(0, 1));
  REQUIRE(rules.rules.size() == 2);
  const Rule& ab = rules.rules[0];
  CHECK(ab.antecedent == make_itemset({"A"}));
  CHECK(ab.consequent == make_itemset({"B"}));
  CHECK(format_percent(ab.confidence) == "8.52");
  CHECK(format_percent(ab.support) == "2.60");
  const Rule& ba = rules.rules[1];
  CHECK(ba.antecedent == make_itemset({"B"}));
  CHECK(format_percent(ba.confidence) == "4.85");
  CHECK(ba.antecedent_count == 536);

  CHECK(derive_rules(frequent, table, Ratio(1, 1)).rules.empty());
  CHECK(derive_rules(mine_frequent(table, config(20, 1)), table, Ratio(0, 1)).rules.empty());
}

TEST_CASE("derive_rules agrees with naive recomputation") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 60; ++trial) {
    const auto table = testing::random_table(rng, 8, 100);
    const auto cfg = config(1 + rng() % 5, 2 + rng() % 3);
    const auto frequent = mine_frequent(table, cfg);
    const Ratio min_conf(rng() % 11, 10);
    const auto rules = derive_rules(frequent, table, min_conf);
    const auto naive = oracle::naive_rules(table, frequent, min_conf);
    CHECK(rules.rules == naive.rules);
    for (const auto& r : rules.rules) {
      // confidence * antecedent == pair, exactly.
      CHECK(Ratio(r.confidence.num() * r.antecedent_count, r.confidence.den()) == Ratio(r.support_count, 1));
      CHECK(r.confidence >= min_conf);
      CHECK(r.confidence.num() > 0);
      CHECK(r.confidence <= Ratio(1, 1));
    }
    if (min_conf == Ratio(1, 1)) {
      for (const auto& r : rules.rules) CHECK(r.antecedent_count == r.support_count);
    }
  }
}
