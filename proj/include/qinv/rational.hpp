#pragma once

#include <cstdint>
#include <compare>
#include <iosfwd>
#include <string>

namespace qinv {

/// Exact rational with 64-bit numerator and denominator, always in lowest
/// terms with a positive denominator. Arithmetic goes through 128-bit
/// intermediates and throws ErrorCode::kOverflow if the reduced result does
/// not fit.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t value) : num_(value) {}  // NOLINT(implicit)
  Rational(std::int64_t num, std::int64_t den);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }

  double to_double() const noexcept {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }
  int sign() const noexcept { return (num_ > 0) - (num_ < 0); }
  bool is_integer() const noexcept { return den_ == 1; }

  /// Reduces a wide fraction; throws kOverflow if it does not fit 64 bits.
  static Rational from_wide(__int128 num, __int128 den);

  /// Largest integer <= value.
  std::int64_t floor() const noexcept;

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  /// "p/q", or "p" for integers.
  std::string str() const;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Reduce x into [0, m) for m > 0, exactly.
Rational mod(const Rational& x, std::int64_t m);

std::ostream& operator<<(std::ostream& os, const Rational& q);

}  // namespace qinv
