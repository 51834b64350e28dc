#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "cscp/model.hpp"

namespace cscp {

struct CatalogEntry {
  DiseaseName name;
  double prevalence;  // marginal probability before boosts, in [0, 1]
};

/// Multiplies P(target) by `multiplier` for patients that already drew
/// `given`. `given` must come before `target` in the catalog, since draws
/// happen in catalog order.
struct Boost {
  DiseaseName given;
  DiseaseName target;
  double multiplier;
};

struct GeneratorConfig {
  static constexpr std::uint64_t kDefaultSeed = 1;
  static constexpr int kMaxRedraws = 1000;

  std::uint64_t patient_count = 1000;
  std::vector<CatalogEntry> catalog = default_catalog();
  std::vector<Boost> boosts;
  int age_min = 0;  // ages are uniform over [age_min, age_max]
  int age_max = 99;
  double p_female = 0.5;
  double p_male = 0.5;
  double p_other = 0.0;
  std::uint64_t seed = kDefaultSeed;

  /// Heart-Block, Hypertension, Myocarditis, Cardiac-Arrest, Bradycardia at
  /// 0.334, 0.549, 0.532, 0.536, 0.305.
  static std::vector<CatalogEntry> default_catalog();

  /// Throws ConfigError on an out-of-range field.
  void validate() const;
};

struct GeneratedData {
  TransactionTable table;
  DemographicsMap demographics;
};

/// Draws `patient_count` patients P000000001, P000000002, ... Each disease is
/// an independent Bernoulli draw in catalog order, adjusted by boosts whose
/// `given` disease was already drawn (clamped to [0, 1]). A patient with no
/// disease is redrawn, at most kMaxRedraws times before GenerationError.
/// Age and sex are drawn after the diseases. The random stream is
/// std::mt19937_64 seeded with `seed`, converted to doubles and integers by
/// fixed arithmetic (no std distributions), so output is identical across
/// platforms and standard libraries.
GeneratedData generate(const GeneratorConfig& config);

/// "P" followed by the ordinal zero-padded to 9 digits. Throws
/// ValidationError unless 1 <= ordinal <= 999,999,999.
PatientId id_format(std::uint64_t ordinal);

/// Uniform double in [0, 1) from the top 53 bits of one draw.
double unit_uniform(std::mt19937_64& rng);

/// Unbiased integer in [lo, hi] by rejection sampling.
int uniform_int(std::mt19937_64& rng, int lo, int hi);

}  // namespace cscp
