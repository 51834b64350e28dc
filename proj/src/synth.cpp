#include "cscp/synth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "cscp/errors.hpp"

namespace cscp {

std::vector<CatalogEntry> GeneratorConfig::default_catalog() {
  return {
      {DiseaseName("Heart-Block"), 0.334},    {DiseaseName("Hypertension"), 0.549},
      {DiseaseName("Myocarditis"), 0.532},    {DiseaseName("Cardiac-Arrest"), 0.536},
      {DiseaseName("Bradycardia"), 0.305},
  };
}

void GeneratorConfig::validate() const {
  if (patient_count < 1 || patient_count > 999'999'999) {
    throw ConfigError("patient_count must lie in [1, 999999999]");
  }
  if (catalog.empty()) throw ConfigError("catalog is empty");
  std::set<DiseaseName> names;
  for (const auto& entry : catalog) {
    if (!(entry.prevalence >= 0.0 && entry.prevalence <= 1.0)) {
      throw ConfigError("prevalence of " + entry.name.str() + " outside [0, 1]");
    }
    if (!names.insert(entry.name).second) throw ConfigError("duplicate catalog disease " + entry.name.str());
  }
  auto position = [&](const DiseaseName& name) {
    const auto it = std::find_if(catalog.begin(), catalog.end(), [&](const CatalogEntry& e) { return e.name == name; });
    if (it == catalog.end()) throw ConfigError("boost names unknown disease " + name.str());
    return it - catalog.begin();
  };
  for (const auto& boost : boosts) {
    if (!(boost.multiplier >= 0.0) || !std::isfinite(boost.multiplier)) {
      throw ConfigError("boost multiplier must be finite and >= 0");
    }
    if (position(boost.given) >= position(boost.target)) {
      throw ConfigError("boost " + boost.given.str() + " -> " + boost.target.str() +
                        ": the given disease must precede the target in the catalog");
    }
  }
  if (age_min < 0 || age_max > Demographics::kMaxAge || age_min > age_max) {
    throw ConfigError("age range must satisfy 0 <= min <= max <= 150");
  }
  for (const double p : {p_female, p_male, p_other}) {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("sex probabilities must lie in [0, 1]");
  }
  if (std::abs(p_female + p_male + p_other - 1.0) > 1e-9) throw ConfigError("sex probabilities must sum to 1");
}

double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  const std::uint64_t range = static_cast<std::uint64_t>(static_cast<std::int64_t>(hi) - lo) + 1;
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - (max % range + 1) % range;
  std::uint64_t x = rng();
  while (x > limit) x = rng();
  return lo + static_cast<int>(x % range);
}

PatientId id_format(std::uint64_t ordinal) {
  if (ordinal < 1 || ordinal > 999'999'999) {
    throw ValidationError("patient ordinal " + std::to_string(ordinal) + " outside [1, 999999999]");
  }
  std::string digits = std::to_string(ordinal);
  return PatientId("P" + std::string(9 - digits.size(), '0') + digits);
}

GeneratedData generate(const GeneratorConfig& config) {
  config.validate();
  const std::size_t n = config.catalog.size();

  // boosts_by_target[i] = (given index, multiplier) pairs affecting disease i.
  std::vector<std::vector<std::pair<std::size_t, double>>> boosts_by_target(n);
  auto index_of = [&](const DiseaseName& name) {
    return static_cast<std::size_t>(
        std::find_if(config.catalog.begin(), config.catalog.end(), [&](const CatalogEntry& e) { return e.name == name; }) -
        config.catalog.begin());
  };
  for (const auto& b : config.boosts) boosts_by_target[index_of(b.target)].emplace_back(index_of(b.given), b.multiplier);

  std::mt19937_64 rng(config.seed);
  TransactionTable::Entries entries;
  DemographicsMap demographics;
  std::vector<bool> drawn(n);

  for (std::uint64_t ordinal = 1; ordinal <= config.patient_count; ++ordinal) {
    bool any = false;
    for (int attempt = 0; attempt < GeneratorConfig::kMaxRedraws && !any; ++attempt) {
      for (std::size_t i = 0; i < n; ++i) {
        double p = config.catalog[i].prevalence;
        for (const auto& [given, multiplier] : boosts_by_target[i]) {
          if (drawn[given]) p *= multiplier;
        }
        p = std::clamp(p, 0.0, 1.0);
        drawn[i] = unit_uniform(rng) < p;
        any = any || drawn[i];
      }
    }
    if (!any) {
      throw GenerationError("patient " + std::to_string(ordinal) + " drew no disease after " +
                            std::to_string(GeneratorConfig::kMaxRedraws) + " attempts");
    }

    PatientId id = id_format(ordinal);
    std::set<DiseaseName> diseases;
    for (std::size_t i = 0; i < n; ++i) {
      if (drawn[i]) diseases.insert(config.catalog[i].name);
    }

    const int age = uniform_int(rng, config.age_min, config.age_max);
    const double u = unit_uniform(rng);
    Sex sex = Sex::other;
    if (u < config.p_female) {
      sex = Sex::female;
    } else if (u < config.p_female + config.p_male) {
      sex = Sex::male;
    } else if (config.p_other == 0.0) {
      // Rounding slack when other has zero mass.
      sex = config.p_male > 0.0 ? Sex::male : Sex::female;
    }

    demographics.emplace_hint(demographics.end(), id, Demographics(id, age, sex));
    entries.emplace_hint(entries.end(), std::move(id), std::move(diseases));
  }
  return {TransactionTable(std::move(entries)), std::move(demographics)};
}

}  // namespace cscp
