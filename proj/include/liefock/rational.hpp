#ifndef LIEFOCK_RATIONAL_HPP
#define LIEFOCK_RATIONAL_HPP

#include <cmath>
#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>

namespace liefock {

// Exact rational with a positive denominator, always in lowest terms.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t num, std::int64_t den = 1) : num_(num), den_(den) { normalize(); }

  constexpr std::int64_t num() const { return num_; }
  constexpr std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  std::string str() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend constexpr Rational operator+(Rational a, Rational b) {
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
  }
  friend constexpr Rational operator-(Rational a, Rational b) {
    return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
  }
  friend constexpr Rational operator-(Rational a) { return {-a.num_, a.den_}; }
  friend constexpr Rational operator*(Rational a, Rational b) {
    return {a.num_ * b.num_, a.den_ * b.den_};
  }
  friend constexpr bool operator==(Rational a, Rational b) = default;
  friend constexpr std::strong_ordering operator<=>(Rational a, Rational b) {
    return a.num_ * b.den_ <=> b.num_ * a.den_;
  }

 private:
  constexpr void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

// Best rational approximation by continued fractions; nullopt when no
// fraction with denominator <= max_den lies within tol of x.
inline std::optional<Rational> rationalize(double x, std::int64_t max_den, double tol) {
  if (!std::isfinite(x)) return std::nullopt;
  const double sign = x < 0 ? -1.0 : 1.0;
  double rem = std::abs(x);
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int iter = 0; iter < 64; ++iter) {
    const double a = std::floor(rem);
    if (a > 9.0e15) break;
    const auto ai = static_cast<std::int64_t>(a);
    const std::int64_t p2 = ai * p1 + p0;
    const std::int64_t q2 = ai * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    if (std::abs(static_cast<double>(p1) / static_cast<double>(q1) - std::abs(x)) <= tol) {
      return Rational(static_cast<std::int64_t>(sign) * p1, q1);
    }
    const double frac = rem - a;
    if (frac < 1e-300) break;
    rem = 1.0 / frac;
  }
  if (q1 != 0 && std::abs(static_cast<double>(p1) / static_cast<double>(q1) - std::abs(x)) <= tol) {
    return Rational(static_cast<std::int64_t>(sign) * p1, q1);
  }
  return std::nullopt;
}

}  // namespace liefock

#endif  // LIEFOCK_RATIONAL_HPP
