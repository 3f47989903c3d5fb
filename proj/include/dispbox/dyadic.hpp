#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>

namespace dispbox {

/// Nonnegative dyadic rational num / 2^exp, kept canonical (num odd or zero,
/// and exp == 0 when num == 0). Arithmetic is exact at any size; every finite
/// nonnegative double converts exactly.
class Dyadic {
 public:
  Dyadic() : num_(0), exp_(0) {}
  Dyadic(std::uint64_t num, unsigned long exp);
  Dyadic(mpz_class num, unsigned long exp);

  static Dyadic zero() { return Dyadic(); }
  static Dyadic one() { return Dyadic(1, 0); }
  // 2^e for any sign of e (e < 0 gives 1/2^{-e}).
  static Dyadic pow2(long e);
  // Exact conversion; x must be finite and >= 0.
  static Dyadic from_double(double x);

  const mpz_class& numerator() const { return num_; }
  unsigned long exponent() const { return exp_; }
  bool is_zero() const { return num_ == 0; }

  double to_double() const;  // nearest double
  std::string to_string() const;  // "p/2^q" (or "p" when q == 0)

  Dyadic operator+(const Dyadic& o) const;
  Dyadic operator-(const Dyadic& o) const;  // requires *this >= o
  Dyadic operator*(const Dyadic& o) const;
  Dyadic pow(unsigned long e) const;

  std::strong_ordering operator<=>(const Dyadic& o) const;
  bool operator==(const Dyadic& o) const { return (*this <=> o) == 0; }

 private:
  void canonicalize();

  mpz_class num_;
  unsigned long exp_;
};

}  // namespace dispbox
