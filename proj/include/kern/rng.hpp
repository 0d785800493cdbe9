#pragma once

#include <cstdint>
#include <random>

#include "kern/matrix.hpp"

namespace kern {

// Seeded PRNG with platform-stable draws (raw mt19937_64 output, no
// distribution objects).
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // Uniform in [0, n).
  int below(int n) { return n <= 1 ? 0 : static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

  // Small scalar suitable for test data; over F_p a residue, over Q an
  // integer in [-3, 3].
  Scalar scalar(const Field& f) {
    if (f.is_rationals()) return Scalar(static_cast<long>(below(7)) - 3);
    return f.reduce(Scalar(static_cast<long>(below(static_cast<int>(f.characteristic())))));
  }

  Scalar nonzero_scalar(const Field& f) {
    for (;;) {
      Scalar s = scalar(f);
      if (s != 0) return s;
    }
  }

  Matrix matrix(const Field& f, int rows, int cols) {
    Matrix m(f, rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m.set(i, j, scalar(f));
    return m;
  }

  Matrix invertible_matrix(const Field& f, int n) {
    for (;;) {
      Matrix m = matrix(f, n, n);
      if (m.is_invertible()) return m;
    }
  }

private:
  std::mt19937_64 eng_;
};

}  // namespace kern
