#include "kern/field.hpp"

namespace kern {

namespace {

bool is_small_prime(unsigned long p) {
  if (p < 2) return false;
  for (unsigned long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

Field Field::prime(unsigned long p) {
  if (!is_small_prime(p)) throw FieldError("characteristic must be prime, got " + std::to_string(p));
  return Field(Kind::prime, p);
}

Scalar Field::reduce(const Scalar& x) const {
  if (kind_ == Kind::rationals) {
    Scalar y = x;
    y.canonicalize();
    return y;
  }
  // Representative num * den^{-1} mod p in [0, p).
  mpz_class p(static_cast<unsigned long>(p_));
  mpz_class num = x.get_num() % p;
  if (num < 0) num += p;
  mpz_class den = x.get_den() % p;
  if (den < 0) den += p;
  if (den == 0) throw FieldError("denominator divisible by the characteristic");
  mpz_class dinv;
  if (mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()) == 0)
    throw FieldError("non-invertible denominator mod p");
  mpz_class r = (num * dinv) % p;
  if (r < 0) r += p;
  return Scalar(r);
}

Scalar Field::inv(const Scalar& a) const {
  Scalar r = reduce(a);
  if (r == 0) throw FieldError("division by zero");
  if (kind_ == Kind::rationals) return Scalar(1) / r;
  mpz_class p(static_cast<unsigned long>(p_));
  mpz_class v = r.get_num();
  mpz_class vinv;
  if (mpz_invert(vinv.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t()) == 0)
    throw FieldError("non-invertible element mod p");
  if (vinv < 0) vinv += p;
  return Scalar(vinv);
}

Scalar Field::parse(const std::string& text) const {
  Scalar x;
  if (x.set_str(text, 10) != 0) throw FieldError("bad scalar literal: '" + text + "'");
  if (x.get_den() == 0) throw FieldError("zero denominator in scalar literal: '" + text + "'");
  return reduce(x);
}

std::string Field::to_string(const Scalar& x) {
  return x.get_str();
}

std::string Field::name() const {
  if (kind_ == Kind::rationals) return "Q";
  return "F" + std::to_string(p_);
}

}  // namespace kern
