#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace cscp {

/// Non-negative exact fraction num/den, always stored in lowest terms.
///
/// Support and confidence are kept as Ratios so that identities such as
/// confidence * antecedent_count == pair_count hold exactly; decimal text
/// only appears at display time through format_percent().
class Ratio {
 public:
  constexpr Ratio() = default;
  Ratio(std::uint64_t num, std::uint64_t den);

  /// Parses a plain decimal such as "0.005", "1", "1.0" or ".25".
  /// Exponents and signs are rejected.
  static Ratio parse_decimal(std::string_view text);

  [[nodiscard]] std::uint64_t num() const noexcept { return num_; }
  [[nodiscard]] std::uint64_t den() const noexcept { return den_; }
  [[nodiscard]] double to_double() const noexcept {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  /// ceil(this * n), computed without rounding error.
  [[nodiscard]] std::uint64_t ceil_mul(std::uint64_t n) const;

  friend bool operator==(const Ratio& a, const Ratio& b) noexcept {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) noexcept;

 private:
  std::uint64_t num_ = 0;
  std::uint64_t den_ = 1;
};

/// Renders 100 * r as a percentage with exactly two decimals, rounding half up
/// ("8.52", "100.00", "0.90").
std::string format_percent(const Ratio& r);

/// Renders r itself with exactly two decimals, rounding half up.
std::string format_fixed2(const Ratio& r);

}  // namespace cscp
