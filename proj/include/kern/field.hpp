#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace kern {

// Exact scalar. Values over Q are canonicalized fractions; values over F_p
// are integer representatives in [0, p) with denominator 1.
using Scalar = mpq_class;

class FieldError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// The ambient field of a computation: Q or F_p for a prime p.
class Field {
public:
  enum class Kind { rationals, prime };

  static Field rationals() { return Field(Kind::rationals, 0); }
  static Field prime(unsigned long p);

  Kind kind() const { return kind_; }
  unsigned long characteristic() const { return p_; }
  bool is_rationals() const { return kind_ == Kind::rationals; }

  bool operator==(const Field& o) const { return kind_ == o.kind_ && p_ == o.p_; }
  bool operator!=(const Field& o) const { return !(*this == o); }

  // Canonical representative of x in this field.
  Scalar reduce(const Scalar& x) const;

  Scalar add(const Scalar& a, const Scalar& b) const { return reduce(a + b); }
  Scalar sub(const Scalar& a, const Scalar& b) const { return reduce(a - b); }
  Scalar mul(const Scalar& a, const Scalar& b) const { return reduce(a * b); }
  Scalar neg(const Scalar& a) const { return reduce(-a); }
  Scalar inv(const Scalar& a) const;
  Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

  bool is_zero(const Scalar& a) const { return reduce(a) == 0; }
  bool eq(const Scalar& a, const Scalar& b) const { return is_zero(a - b); }

  Scalar from_long(long v) const { return reduce(Scalar(v)); }
  // Accepts "a/b" fractions (Q) or integer literals (any field).
  Scalar parse(const std::string& text) const;

  // "a/b" for non-integral rationals, plain integer text otherwise.
  static std::string to_string(const Scalar& x);

  std::string name() const;

private:
  Field(Kind kind, unsigned long p) : kind_(kind), p_(p) {}

  Kind kind_;
  unsigned long p_;
};

}  // namespace kern
