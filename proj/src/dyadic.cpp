#include "dispbox/dyadic.hpp"

#include <cmath>
#include <limits>

#include "dispbox/errors.hpp"

namespace dispbox {

Dyadic::Dyadic(std::uint64_t num, unsigned long exp) : num_(), exp_(exp) {
  mpz_import(num_.get_mpz_t(), 1, 1, sizeof(num), 0, 0, &num);
  canonicalize();
}

Dyadic::Dyadic(mpz_class num, unsigned long exp) : num_(std::move(num)), exp_(exp) {
  if (num_ < 0) throw usage_error("Dyadic numerator must be nonnegative");
  canonicalize();
}

void Dyadic::canonicalize() {
  if (num_ == 0) {
    exp_ = 0;
    return;
  }
  // Strip common powers of two, but never below exponent 0.
  mp_bitcnt_t tz = mpz_scan1(num_.get_mpz_t(), 0);
  if (tz > exp_) tz = exp_;
  if (tz > 0) {
    num_ >>= tz;
    exp_ -= tz;
  }
}

Dyadic Dyadic::pow2(long e) {
  if (e >= 0) {
    mpz_class n = 1;
    n <<= static_cast<unsigned long>(e);
    return Dyadic(n, 0);
  }
  return Dyadic(1, static_cast<unsigned long>(-e));
}

Dyadic Dyadic::from_double(double x) {
  if (!std::isfinite(x) || x < 0.0)
    throw usage_error("Dyadic::from_double requires a finite nonnegative value");
  if (x == 0.0) return zero();
  int e;
  double f = std::frexp(x, &e);  // x = f * 2^e, f in [0.5, 1)
  auto mant = static_cast<std::uint64_t>(std::ldexp(f, 53));  // exact 53-bit integer
  long shift = e - 53;
  if (shift >= 0) {
    mpz_class n;
    mpz_import(n.get_mpz_t(), 1, 1, sizeof(mant), 0, 0, &mant);
    n <<= static_cast<unsigned long>(shift);
    return Dyadic(n, 0);
  }
  return Dyadic(mant, static_cast<unsigned long>(-shift));
}

double Dyadic::to_double() const {
  mpq_class q(num_, 1);
  mpz_class den = 1;
  den <<= exp_;
  q /= mpq_class(den, 1);
  return q.get_d();
}

std::string Dyadic::to_string() const {
  if (exp_ == 0) return num_.get_str();
  return num_.get_str() + "/2^" + std::to_string(exp_);
}

Dyadic Dyadic::operator+(const Dyadic& o) const {
  unsigned long e = std::max(exp_, o.exp_);
  mpz_class a = num_ << (e - exp_);
  mpz_class b = o.num_ << (e - o.exp_);
  return Dyadic(a + b, e);
}

Dyadic Dyadic::operator-(const Dyadic& o) const {
  unsigned long e = std::max(exp_, o.exp_);
  mpz_class a = num_ << (e - exp_);
  mpz_class b = o.num_ << (e - o.exp_);
  if (a < b) throw usage_error("Dyadic subtraction would go negative");
  return Dyadic(a - b, e);
}

Dyadic Dyadic::operator*(const Dyadic& o) const {
  return Dyadic(num_ * o.num_, exp_ + o.exp_);
}

Dyadic Dyadic::pow(unsigned long e) const {
  mpz_class n;
  mpz_pow_ui(n.get_mpz_t(), num_.get_mpz_t(), e);
  return Dyadic(n, exp_ * e);
}

std::strong_ordering Dyadic::operator<=>(const Dyadic& o) const {
  unsigned long e = std::max(exp_, o.exp_);
  mpz_class a = num_ << (e - exp_);
  mpz_class b = o.num_ << (e - o.exp_);
  int c = cmp(a, b);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace dispbox
