#include "kern/simplex.hpp"

namespace kern {

MonotoneMap::MonotoneMap(int src, int tgt, std::vector<int> vals)
    : source(src), target(tgt), values(std::move(vals)) {
  if (src < 0 || tgt < 0 || static_cast<int>(values.size()) != src)
    throw SimplexError("monotone map: bad shape");
  int prev = 1;
  for (int v : values) {
    if (v < prev || v > tgt) throw SimplexError("monotone map: values not nondecreasing in range");
    prev = v;
  }
}

MonotoneMap MonotoneMap::identity(int n) {
  std::vector<int> vals(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) vals[static_cast<size_t>(i)] = i + 1;
  return MonotoneMap(n, n, std::move(vals));
}

MonotoneMap MonotoneMap::empty_to(int n) { return MonotoneMap(0, n, {}); }

MonotoneMap MonotoneMap::of(int src, int tgt, std::initializer_list<int> vals) {
  return MonotoneMap(src, tgt, std::vector<int>(vals));
}

bool MonotoneMap::is_identity() const {
  if (source != target) return false;
  for (int i = 1; i <= source; ++i)
    if ((*this)(i) != i) return false;
  return true;
}

bool MonotoneMap::injective() const {
  for (size_t i = 1; i < values.size(); ++i)
    if (values[i] == values[i - 1]) return false;
  return true;
}

std::vector<bool> MonotoneMap::image_mask() const {
  std::vector<bool> mask(static_cast<size_t>(target), false);
  for (int v : values) mask[static_cast<size_t>(v - 1)] = true;
  return mask;
}

std::string MonotoneMap::str() const {
  std::string s = "[" + std::to_string(source) + "->" + std::to_string(target) + ":";
  for (size_t i = 0; i < values.size(); ++i) s += (i ? "," : " ") + std::to_string(values[i]);
  return s + "]";
}

MonotoneMap compose(const MonotoneMap& g, const MonotoneMap& f) {
  if (f.target != g.source) throw SimplexError("compose: endpoint mismatch");
  std::vector<int> vals(static_cast<size_t>(f.source));
  for (int i = 1; i <= f.source; ++i) vals[static_cast<size_t>(i - 1)] = g(f(i));
  return MonotoneMap(f.source, g.target, std::move(vals));
}

std::vector<MonotoneMap> enumerate_maps(int m, int n) {
  if (m < 0 || n < 0) throw SimplexError("enumerate_maps: negative size");
  std::vector<MonotoneMap> out;
  if (m == 0) {
    out.push_back(MonotoneMap::empty_to(n));
    return out;
  }
  if (n == 0) return out;  // no maps from a nonempty set to the empty set
  std::vector<int> vals(static_cast<size_t>(m), 1);
  for (;;) {
    out.emplace_back(m, n, vals);
    int i = m - 1;
    while (i >= 0 && vals[static_cast<size_t>(i)] == n) --i;
    if (i < 0) break;
    int v = ++vals[static_cast<size_t>(i)];
    for (int j = i + 1; j < m; ++j) vals[static_cast<size_t>(j)] = v;
  }
  return out;
}

void SimplexSquare::check_commutes() const {
  if (f.source != g.source || f.target != gp.source || g.target != fp.source ||
      gp.target != fp.target)
    throw SimplexError("square: endpoint mismatch");
  if (compose(gp, f) != compose(fp, g)) throw SimplexError("square does not commute");
}

bool is_exact_cartesian(const SimplexSquare& sq) {
  sq.check_commutes();
  bool inj_f = sq.f.injective() && sq.fp.injective();
  bool inj_g = sq.g.injective() && sq.gp.injective();
  if (!inj_f && !inj_g) return false;
  auto mask_fp = sq.fp.image_mask();
  auto mask_gp = sq.gp.image_mask();
  for (size_t i = 0; i < mask_fp.size(); ++i)
    if (!mask_fp[i] && !mask_gp[i]) return false;
  return true;
}

std::vector<SimplexSquare> enumerate_exact_cartesian_squares(int max_size) {
  std::vector<SimplexSquare> out;
  for (int a = 0; a <= max_size; ++a)
    for (int b = 0; b <= max_size; ++b)
      for (int c = 0; c <= max_size; ++c)
        for (int d = 0; d <= max_size; ++d)
          for (const auto& f : enumerate_maps(a, b))
            for (const auto& g : enumerate_maps(a, c))
              for (const auto& gp : enumerate_maps(b, d))
                for (const auto& fp : enumerate_maps(c, d)) {
                  if (compose(gp, f) != compose(fp, g)) continue;
                  SimplexSquare sq{f, g, gp, fp};
                  if (is_exact_cartesian(sq)) out.push_back(std::move(sq));
                }
  return out;
}

}  // namespace kern
