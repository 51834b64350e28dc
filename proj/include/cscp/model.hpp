#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cscp/ratio.hpp"

namespace cscp {

/// Disease label. Surrounding whitespace is trimmed and internal runs of
/// spaces/tabs collapse to one space; case is preserved. Names may not
/// contain line breaks, ',' (the CSV field separator) or '|' (the itemset
/// separator used in reports).
class DiseaseName {
 public:
  explicit DiseaseName(std::string_view raw);

  [[nodiscard]] const std::string& str() const noexcept { return name_; }

  friend bool operator==(const DiseaseName&, const DiseaseName&) = default;
  friend auto operator<=>(const DiseaseName&, const DiseaseName&) = default;

 private:
  std::string name_;
};

/// Opaque patient key, compared by exact text.
class PatientId {
 public:
  explicit PatientId(std::string_view id);

  [[nodiscard]] const std::string& str() const noexcept { return id_; }

  friend bool operator==(const PatientId&, const PatientId&) = default;
  friend auto operator<=>(const PatientId&, const PatientId&) = default;

 private:
  std::string id_;
};

/// Non-empty, strictly ascending list of diseases (code-point order).
class ItemSet {
 public:
  [[nodiscard]] const std::vector<DiseaseName>& items() const noexcept { return items_; }
  [[nodiscard]] std::size_t size() const noexcept { return items_.size(); }
  [[nodiscard]] auto begin() const noexcept { return items_.begin(); }
  [[nodiscard]] auto end() const noexcept { return items_.end(); }

  /// True when every item of this set is in `other`.
  [[nodiscard]] bool is_subset_of(const ItemSet& other) const;

  /// Items joined with `sep` ("Bradycardia|Cardiac-Arrest").
  [[nodiscard]] std::string join(std::string_view sep = "|") const;

  friend bool operator==(const ItemSet&, const ItemSet&) = default;
  friend auto operator<=>(const ItemSet&, const ItemSet&) = default;

 private:
  friend ItemSet canonicalize_itemset(std::vector<DiseaseName> items);
  std::vector<DiseaseName> items_;
};

/// Sorts and deduplicates. Throws ValidationError on empty input.
ItemSet canonicalize_itemset(std::vector<DiseaseName> items);

/// Convenience overload for literals and parsed text.
ItemSet make_itemset(std::initializer_list<std::string_view> names);

/// Patient -> disease-set map; the number of keys is the transaction count T.
/// Immutable once built.
class TransactionTable {
 public:
  using Entries = std::map<PatientId, std::set<DiseaseName>>;

  TransactionTable() = default;
  /// Throws ValidationError if any patient has an empty disease set.
  explicit TransactionTable(Entries entries);

  [[nodiscard]] const Entries& entries() const noexcept { return entries_; }
  [[nodiscard]] std::size_t total_patients() const noexcept { return entries_.size(); }
  [[nodiscard]] bool empty() const noexcept { return entries_.empty(); }

  /// Diseases that occur in at least one transaction, ascending.
  [[nodiscard]] std::vector<DiseaseName> disease_universe() const;

  /// Sub-table holding only the listed patients; ids not in the table are ignored.
  [[nodiscard]] TransactionTable restrict_to(const std::set<PatientId>& patients) const;

  friend bool operator==(const TransactionTable&, const TransactionTable&) = default;

 private:
  Entries entries_;
};

/// One patient's aggregated itemset together with its cardinality.
struct PatientRecord {
  PatientId patient;
  std::size_t count;
  std::vector<DiseaseName> diseases;

  friend bool operator==(const PatientRecord&, const PatientRecord&) = default;
};

enum class Sex { female, male, other };

std::string_view to_string(Sex sex) noexcept;

struct Demographics {
  static constexpr int kMaxAge = 150;

  PatientId patient;
  std::optional<int> age;
  std::optional<Sex> sex;

  /// Throws ValidationError when age lies outside [0, 150].
  Demographics(PatientId patient, std::optional<int> age, std::optional<Sex> sex);

  friend bool operator==(const Demographics&, const Demographics&) = default;
};

using DemographicsMap = std::map<PatientId, Demographics>;

struct ItemsetCount {
  ItemSet itemset;
  std::uint64_t support_count = 0;

  /// Level-wise pass that produced the set; always the itemset size.
  [[nodiscard]] std::size_t pass() const noexcept { return itemset.size(); }

  friend bool operator==(const ItemsetCount&, const ItemsetCount&) = default;
};

struct AbsoluteSupport {
  std::uint64_t count;
  friend bool operator==(const AbsoluteSupport&, const AbsoluteSupport&) = default;
};

struct RelativeSupport {
  Ratio fraction;
  friend bool operator==(const RelativeSupport&, const RelativeSupport&) = default;
};

using MinSupport = std::variant<AbsoluteSupport, RelativeSupport>;

/// Integer text is an absolute count; text with a decimal point is a fraction.
MinSupport parse_minsup(std::string_view text);

std::string to_string(const MinSupport& minsup);

struct MiningConfig {
  std::size_t maxpass = 2;
  MinSupport minsup = AbsoluteSupport{1};
  Ratio min_conf{0, 1};

  /// Throws ConfigError on maxpass 0, absolute minsup 0, relative minsup
  /// outside (0, 1] or min_conf above 1.
  void validate() const;
};

/// Directed association rule antecedent -> consequent.
struct Rule {
  ItemSet antecedent;
  ItemSet consequent;
  std::uint64_t support_count = 0;     // transactions holding antecedent and consequent
  std::uint64_t antecedent_count = 0;  // transactions holding the antecedent
  Ratio support;                       // support_count / total
  Ratio confidence;                    // support_count / antecedent_count

  friend bool operator==(const Rule&, const Rule&) = default;
};

/// Half-open age range [lo, hi).
struct AgeBand {
  int lo;
  int hi;

  [[nodiscard]] bool contains(int age) const noexcept { return lo <= age && age < hi; }
  /// "45-50" for [45, 50).
  [[nodiscard]] std::string label() const;

  friend bool operator==(const AgeBand&, const AgeBand&) = default;
};

enum class StratumAttribute { age, sex };

struct StratumSpec {
  StratumAttribute attribute = StratumAttribute::sex;
  std::vector<AgeBand> age_bands;

  static StratumSpec by_sex();
  /// Throws ValidationError unless bands are ascending, contiguous and span [0, 150).
  static StratumSpec by_age(std::vector<AgeBand> bands);

  void validate() const;
};

/// [0,5), [5,10), ..., [145,150).
std::vector<AgeBand> default_age_bands();

/// Parses "0:45,45:50,50:150".
std::vector<AgeBand> parse_age_bands(std::string_view text);

}  // namespace cscp
