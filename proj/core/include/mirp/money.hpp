#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace mirp {

/// Fixed-point money with 1/100 resolution.
///
/// Every cost term is rounded to cents once, where it is produced (one leg,
/// one port fee, one period of spot charter), and then summed as integers.
/// Sums are therefore exact and independent of summation order, which the
/// beam's score dedup and the commutation tests rely on.
class Money {
 public:
  constexpr Money() = default;

  static constexpr Money from_cents(std::int64_t cents) {
    Money m;
    m.cents_ = cents;
    return m;
  }

  /// Rounds half away from zero.
  static Money from_double(double value) {
    return from_cents(static_cast<std::int64_t>(std::llround(value * 100.0)));
  }

  /// Parses "1234.5", "-0.26", "40340.01". At most two decimals are honoured;
  /// more are rounded.
  static std::optional<Money> parse(std::string_view text);

  constexpr std::int64_t cents() const { return cents_; }
  constexpr double value() const { return static_cast<double>(cents_) / 100.0; }

  /// Plain two-decimal rendering without thousands separators.
  std::string str() const;

  constexpr Money operator+(Money o) const { return from_cents(cents_ + o.cents_); }
  constexpr Money operator-(Money o) const { return from_cents(cents_ - o.cents_); }
  constexpr Money operator-() const { return from_cents(-cents_); }
  constexpr Money& operator+=(Money o) {
    cents_ += o.cents_;
    return *this;
  }
  constexpr Money& operator-=(Money o) {
    cents_ -= o.cents_;
    return *this;
  }
  constexpr auto operator<=>(const Money&) const = default;

 private:
  std::int64_t cents_ = 0;
};

inline std::string Money::str() const {
  const std::int64_t mag = cents_ < 0 ? -cents_ : cents_;
  std::string out = cents_ < 0 ? "-" : "";
  out += std::to_string(mag / 100);
  out += '.';
  const auto frac = mag % 100;
  if (frac < 10) out += '0';
  out += std::to_string(frac);
  return out;
}

inline std::optional<Money> Money::parse(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r'))
    text.remove_suffix(1);
  if (text.empty()) return std::nullopt;
  std::string buf(text);
  char* end = nullptr;
  const double v = std::strtod(buf.c_str(), &end);
  if (end != buf.c_str() + buf.size() || !std::isfinite(v)) return std::nullopt;
  return from_double(v);
}

inline std::ostream& operator<<(std::ostream& os, Money m) { return os << m.str(); }

}  // namespace mirp
