#ifndef ATOMLOOP_CARDINAL_HPP
#define ATOMLOOP_CARDINAL_HPP

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "atomloop/errors.hpp"

namespace atomloop {

// Set sizes reach 2^ℓ with ℓ in the hundreds, so they are always big integers.
using Cardinal = boost::multiprecision::cpp_int;

inline std::string to_decimal(const Cardinal& c) { return c.str(); }

inline Cardinal power_of_two(std::size_t exponent) {
  Cardinal c = 1;
  c <<= exponent;
  return c;
}

// atsize bookkeeping must never go negative; a negative value would mean the
// atom-partition identity was broken somewhere upstream.
inline void checked_subtract(Cardinal& from, const Cardinal& amount) {
  from -= amount;
  if (from < 0) {
    throw StructuralError("atom size went negative");
  }
}

// Exact non-negative fraction, kept reduced.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    if (den_ == 0) throw StructuralError("rational with zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const std::int64_t g = std::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  std::int64_t numerator() const noexcept { return num_; }
  std::int64_t denominator() const noexcept { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  // Always "p/q", including integers ("4/1").
  std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend auto operator<=>(const Rational& a, const Rational& b) {
    const Cardinal lhs = Cardinal(a.num_) * b.den_;
    const Cardinal rhs = Cardinal(b.num_) * a.den_;
    return lhs == rhs ? std::strong_ordering::equal : (lhs < rhs ? std::strong_ordering::less : std::strong_ordering::greater);
  }
  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace atomloop

#endif  // ATOMLOOP_CARDINAL_HPP
