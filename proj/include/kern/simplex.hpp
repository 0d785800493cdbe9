#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

namespace kern {

class SimplexError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Object of Delta_0: the set [1..n], with n = 0 for the empty set.
struct SimplexObject {
  int n = 0;
  auto operator<=>(const SimplexObject&) const = default;
};

// Nondecreasing map [1..source] -> [1..target]; 1-based values.
struct MonotoneMap {
  int source = 0;
  int target = 0;
  std::vector<int> values;

  MonotoneMap() = default;
  MonotoneMap(int src, int tgt, std::vector<int> vals);
  static MonotoneMap identity(int n);
  static MonotoneMap empty_to(int n);  // the unique map from the empty set
  // Named 1-based constructor: f(i) = vals[i-1].
  static MonotoneMap of(int src, int tgt, std::initializer_list<int> vals);

  int operator()(int i) const { return values[static_cast<size_t>(i - 1)]; }
  bool is_identity() const;
  bool injective() const;
  std::vector<bool> image_mask() const;  // size target
  auto operator<=>(const MonotoneMap&) const = default;
  std::string str() const;
};

// g o f; requires target(f) = source(g).
MonotoneMap compose(const MonotoneMap& g, const MonotoneMap& f);

// All nondecreasing maps [1..m] -> [1..n], lexicographically ordered by value
// arrays. For m = 0 this is the single empty map.
std::vector<MonotoneMap> enumerate_maps(int m, int n);

// Commuting square with source corner A: f: A->B, g: A->C, gp: B->D, fp: C->D.
struct SimplexSquare {
  MonotoneMap f, g, gp, fp;
  void check_commutes() const;
};

// Exact Cartesian: one parallel pair of legs injective and Im fp u Im gp
// exhausting D.
bool is_exact_cartesian(const SimplexSquare& sq);

// All exact Cartesian squares with every corner of size <= max_size.
std::vector<SimplexSquare> enumerate_exact_cartesian_squares(int max_size);

}  // namespace kern
