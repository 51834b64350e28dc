#include "cscp/model.hpp"

#include <algorithm>
#include <charconv>

#include "cscp/errors.hpp"

namespace cscp {

namespace {

bool is_blank(char c) noexcept { return c == ' ' || c == '\t'; }

std::string normalize_name(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  for (const char c : raw) {
    if (is_blank(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += c;
  }
  return out;
}

int parse_int(std::string_view text, std::string_view what) {
  int value = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw ValidationError("bad " + std::string(what) + ": '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

DiseaseName::DiseaseName(std::string_view raw) : name_(normalize_name(raw)) {
  if (name_.empty()) throw ValidationError("disease name is empty");
  if (name_.find_first_of("\r\n,|") != std::string::npos) {
    throw ValidationError("disease name contains a separator or line break: '" + name_ + "'");
  }
}

PatientId::PatientId(std::string_view id) : id_(id) {
  if (id_.empty()) throw ValidationError("patient id is empty");
  if (id_.find_first_of("\r\n") != std::string::npos) {
    throw ValidationError("patient id contains a line break");
  }
}

bool ItemSet::is_subset_of(const ItemSet& other) const {
  return std::includes(other.items_.begin(), other.items_.end(), items_.begin(), items_.end());
}

std::string ItemSet::join(std::string_view sep) const {
  std::string out;
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (i != 0) out += sep;
    out += items_[i].str();
  }
  return out;
}

ItemSet canonicalize_itemset(std::vector<DiseaseName> items) {
  if (items.empty()) throw ValidationError("itemset is empty");
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  ItemSet set;
  set.items_ = std::move(items);
  return set;
}

ItemSet make_itemset(std::initializer_list<std::string_view> names) {
  std::vector<DiseaseName> items;
  items.reserve(names.size());
  for (const auto name : names) items.emplace_back(name);
  return canonicalize_itemset(std::move(items));
}

TransactionTable::TransactionTable(Entries entries) : entries_(std::move(entries)) {
  for (const auto& [patient, diseases] : entries_) {
    if (diseases.empty()) {
      throw ValidationError("patient " + patient.str() + " has no diseases");
    }
  }
}

std::vector<DiseaseName> TransactionTable::disease_universe() const {
  std::set<DiseaseName> all;
  for (const auto& [patient, diseases] : entries_) all.insert(diseases.begin(), diseases.end());
  return {all.begin(), all.end()};
}

TransactionTable TransactionTable::restrict_to(const std::set<PatientId>& patients) const {
  Entries subset;
  for (const auto& id : patients) {
    if (auto it = entries_.find(id); it != entries_.end()) subset.emplace_hint(subset.end(), *it);
  }
  TransactionTable out;
  out.entries_ = std::move(subset);
  return out;
}

std::string_view to_string(Sex sex) noexcept {
  switch (sex) {
    case Sex::female:
      return "female";
    case Sex::male:
      return "male";
    case Sex::other:
      return "other";
  }
  return "other";
}

Demographics::Demographics(PatientId patient_id, std::optional<int> age_years, std::optional<Sex> sex_value)
    : patient(std::move(patient_id)), age(age_years), sex(sex_value) {
  if (age && (*age < 0 || *age > kMaxAge)) {
    throw ValidationError("age " + std::to_string(*age) + " outside [0, 150]");
  }
}

MinSupport parse_minsup(std::string_view text) {
  try {
    if (text.find('.') != std::string_view::npos) return RelativeSupport{Ratio::parse_decimal(text)};
    const Ratio whole = Ratio::parse_decimal(text);
    return AbsoluteSupport{whole.num()};
  } catch (const ValidationError& e) {
    throw ConfigError(std::string("minsup: ") + e.what());
  }
}

std::string to_string(const MinSupport& minsup) {
  if (const auto* abs = std::get_if<AbsoluteSupport>(&minsup)) return std::to_string(abs->count);
  const auto& rel = std::get<RelativeSupport>(minsup).fraction;
  return std::to_string(rel.num()) + "/" + std::to_string(rel.den());
}

void MiningConfig::validate() const {
  if (maxpass < 1) throw ConfigError("maxpass must be at least 1");
  if (const auto* abs = std::get_if<AbsoluteSupport>(&minsup)) {
    if (abs->count < 1) throw ConfigError("absolute minsup must be at least 1");
  } else {
    const auto& f = std::get<RelativeSupport>(minsup).fraction;
    if (f.num() == 0 || f > Ratio(1, 1)) throw ConfigError("relative minsup must lie in (0, 1]");
  }
  if (min_conf > Ratio(1, 1)) throw ConfigError("min-conf must lie in [0, 1]");
}

std::string AgeBand::label() const { return std::to_string(lo) + "-" + std::to_string(hi); }

StratumSpec StratumSpec::by_sex() { return StratumSpec{StratumAttribute::sex, {}}; }

StratumSpec StratumSpec::by_age(std::vector<AgeBand> bands) {
  StratumSpec spec{StratumAttribute::age, std::move(bands)};
  spec.validate();
  return spec;
}

void StratumSpec::validate() const {
  if (attribute != StratumAttribute::age) return;
  if (age_bands.empty()) throw ValidationError("age bands are empty");
  int expected_lo = 0;
  for (const auto& band : age_bands) {
    if (band.lo >= band.hi) throw ValidationError("age band " + band.label() + " is empty or inverted");
    if (band.lo != expected_lo) {
      throw ValidationError("age bands must be ascending and contiguous from 0; gap or overlap at " +
                            band.label());
    }
    expected_lo = band.hi;
  }
  if (expected_lo != Demographics::kMaxAge) throw ValidationError("age bands must end at 150");
}

std::vector<AgeBand> default_age_bands() {
  std::vector<AgeBand> bands;
  for (int lo = 0; lo < Demographics::kMaxAge; lo += 5) bands.push_back({lo, lo + 5});
  return bands;
}

std::vector<AgeBand> parse_age_bands(std::string_view text) {
  std::vector<AgeBand> bands;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto token = text.substr(0, comma);
    const auto colon = token.find(':');
    if (colon == std::string_view::npos) {
      throw ValidationError("age band '" + std::string(token) + "' is not lo:hi");
    }
    bands.push_back({parse_int(token.substr(0, colon), "age band bound"),
                     parse_int(token.substr(colon + 1), "age band bound")});
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return bands;
}

}  // namespace cscp
