#include "spinmix/rational.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

#include "spinmix/error.hpp"

namespace spinmix {
namespace {

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits(__int128 x) {
  return x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max();
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  *this = from_wide(num, den);
}

Rational Rational::from_wide(__int128 num, __int128 den) {
  if (den == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const __int128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (!fits(num) || !fits(den)) throw Error(ErrorKind::Overflow, "rational out of 64-bit range");
  Rational r;
  r.num_ = static_cast<std::int64_t>(num);
  r.den_ = static_cast<std::int64_t>(den);
  return r;
}

Rational operator+(const Rational& a, const Rational& b) {
  return Rational::from_wide(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                             static_cast<__int128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  return Rational::from_wide(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw Error(ErrorKind::InvalidArgument, "division by zero rational");
  return Rational::from_wide(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept {
  const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
  const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
  return lhs <=> rhs;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

std::int64_t checked_lcm(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  const __int128 l = static_cast<__int128>(a / std::gcd(a, b)) * b;
  if (!fits(l)) throw Error(ErrorKind::Overflow, "lcm out of 64-bit range");
  return static_cast<std::int64_t>(l < 0 ? -l : l);
}

Rational approximate(double x, std::int64_t max_den) {
  if (!std::isfinite(x)) throw Error(ErrorKind::InvalidArgument, "non-finite value");
  const bool negative = x < 0;
  double v = std::fabs(x);
  // Convergents h/k of the continued fraction of v.
  __int128 h_prev = 1, h = static_cast<__int128>(std::floor(v));
  __int128 k_prev = 0, k = 1;
  double frac = v - std::floor(v);
  for (int iter = 0; iter < 64 && frac > 1e-300; ++iter) {
    const double inv = 1.0 / frac;
    const double a_d = std::floor(inv);
    if (a_d > 1e18) break;
    const auto a = static_cast<__int128>(a_d);
    const __int128 k_next = a * k + k_prev;
    if (k_next > max_den) {
      // Best semiconvergent within the bound.
      const __int128 t = (max_den - k_prev) / k;
      const __int128 h_semi = t * h + h_prev;
      const __int128 k_semi = t * k + k_prev;
      if (t > 0) {
        const double e_semi = std::fabs(v - static_cast<double>(h_semi) / static_cast<double>(k_semi));
        const double e_conv = std::fabs(v - static_cast<double>(h) / static_cast<double>(k));
        if (e_semi < e_conv) {
          h = h_semi;
          k = k_semi;
        }
      }
      break;
    }
    const __int128 h_next = a * h + h_prev;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
    frac = inv - a_d;
  }
  if (!fits(h) || !fits(k)) throw Error(ErrorKind::Overflow, "approximation out of range");
  const auto num = static_cast<std::int64_t>(h);
  return {negative ? -num : num, static_cast<std::int64_t>(k)};
}

}  // namespace spinmix
