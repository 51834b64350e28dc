#include "cscp/ratio.hpp"

#include <cctype>
#include <numeric>

#include "cscp/errors.hpp"

namespace cscp {

namespace {

using u128 = unsigned __int128;

std::string fixed2_from_hundredths(u128 hundredths) {
  std::string whole;
  u128 units = hundredths / 100;
  do {
    whole.insert(whole.begin(), static_cast<char>('0' + static_cast<int>(units % 10)));
    units /= 10;
  } while (units != 0);
  const auto frac = static_cast<int>(hundredths % 100);
  whole += '.';
  whole += static_cast<char>('0' + frac / 10);
  whole += static_cast<char>('0' + frac % 10);
  return whole;
}

// round_half_up(scale * num / den)
u128 scaled_half_up(const Ratio& r, std::uint64_t scale) {
  const u128 n = static_cast<u128>(r.num()) * scale;
  const u128 d = r.den();
  return (2 * n + d) / (2 * d);
}

}  // namespace

Ratio::Ratio(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw ValidationError("ratio with zero denominator");
  const std::uint64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

Ratio Ratio::parse_decimal(std::string_view text) {
  if (text.empty()) throw ValidationError("empty decimal");
  std::uint64_t num = 0;
  std::uint64_t den = 1;
  bool seen_point = false;
  bool seen_digit = false;
  for (const char c : text) {
    if (c == '.') {
      if (seen_point) throw ValidationError("malformed decimal: " + std::string(text));
      seen_point = true;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) == 0) {
      throw ValidationError("malformed decimal: " + std::string(text));
    }
    seen_digit = true;
    if (num > (UINT64_MAX - 9) / 10 || (seen_point && den > UINT64_MAX / 10)) {
      throw ValidationError("decimal out of range: " + std::string(text));
    }
    num = num * 10 + static_cast<std::uint64_t>(c - '0');
    if (seen_point) den *= 10;
  }
  if (!seen_digit) throw ValidationError("malformed decimal: " + std::string(text));
  return Ratio(num, den);
}

std::uint64_t Ratio::ceil_mul(std::uint64_t n) const {
  const u128 p = static_cast<u128>(num_) * n;
  const u128 q = (p + den_ - 1) / den_;
  if (q > UINT64_MAX) throw ValidationError("ratio product overflows");
  return static_cast<std::uint64_t>(q);
}

std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) noexcept {
  const u128 lhs = static_cast<u128>(a.num_) * b.den_;
  const u128 rhs = static_cast<u128>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string format_percent(const Ratio& r) { return fixed2_from_hundredths(scaled_half_up(r, 10000)); }

std::string format_fixed2(const Ratio& r) { return fixed2_from_hundredths(scaled_half_up(r, 100)); }

}  // namespace cscp
