#pragma once

// Exact Euclidean distance transform (Felzenszwalb & Huttenlocher lower
// envelope of parabolas, applied separably per axis on squared distances).

#include <cmath>
#include <limits>
#include <vector>

#include "grid.hpp"

namespace pathbench {

class DistanceField {
 public:
  DistanceField() = default;
  DistanceField(std::vector<double> values, bool unbounded)
      : values_(std::move(values)), unbounded_(unbounded) {}

  // True when the map has no obstacle cell; every value is then +inf.
  bool unbounded() const { return unbounded_; }
  double at(std::size_t idx) const { return values_[idx]; }
  double at(const GridMap& map, const Cell& c) const { return values_[map.index(c)]; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> values_;
  bool unbounded_ = true;
};

namespace detail {

// In-place 1D squared EDT over f[0..n) with stride; scratch buffers reused.
inline void edt_1d(std::vector<double>& data, std::size_t offset, std::size_t stride, int n,
                   std::vector<double>& f, std::vector<double>& d, std::vector<int>& v,
                   std::vector<double>& z) {
  const double inf = std::numeric_limits<double>::infinity();
  f.resize(static_cast<std::size_t>(n));
  d.resize(static_cast<std::size_t>(n));
  v.resize(static_cast<std::size_t>(n));
  z.resize(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i < n; ++i) f[static_cast<std::size_t>(i)] = data[offset + static_cast<std::size_t>(i) * stride];

  // Parabolas rooted at +inf contribute nothing; skip them.
  int k = -1;
  for (int q = 0; q < n; ++q) {
    const double fq = f[static_cast<std::size_t>(q)];
    if (fq == inf) continue;
    if (k < 0) {
      k = 0;
      v[0] = q;
      z[0] = -inf;
      z[1] = inf;
      continue;
    }
    double s;
    for (;;) {
      const int p = v[static_cast<std::size_t>(k)];
      s = ((fq + double(q) * q) - (f[static_cast<std::size_t>(p)] + double(p) * p)) / (2.0 * (q - p));
      if (s > z[static_cast<std::size_t>(k)]) break;
      --k;  // z[0] is -inf, so k never drops below 0
    }
    ++k;
    v[static_cast<std::size_t>(k)] = q;
    z[static_cast<std::size_t>(k)] = s;
    z[static_cast<std::size_t>(k) + 1] = inf;
  }

  if (k < 0) {
    for (int q = 0; q < n; ++q) d[static_cast<std::size_t>(q)] = inf;
  } else {
    int j = 0;
    for (int q = 0; q < n; ++q) {
      while (z[static_cast<std::size_t>(j) + 1] < q) ++j;
      const int p = v[static_cast<std::size_t>(j)];
      d[static_cast<std::size_t>(q)] = double(q - p) * (q - p) + f[static_cast<std::size_t>(p)];
    }
  }
  for (int i = 0; i < n; ++i) data[offset + static_cast<std::size_t>(i) * stride] = d[static_cast<std::size_t>(i)];
}

}  // namespace detail

inline DistanceField distance_transform(const GridMap& map) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> sq(map.size());
  bool any_obstacle = false;
  for (std::size_t i = 0; i < map.size(); ++i) {
    sq[i] = map.is_obstacle(i) ? 0.0 : inf;
    any_obstacle = any_obstacle || map.is_obstacle(i);
  }
  if (!any_obstacle) return DistanceField(std::move(sq), true);

  const auto& e = map.extent();
  const std::size_t e0 = static_cast<std::size_t>(e[0]);
  const std::size_t e1 = static_cast<std::size_t>(e[1]);
  const std::size_t e2 = static_cast<std::size_t>(e[2]);
  std::vector<double> f, d, z;
  std::vector<int> v;

  // last axis (stride 1)
  for (std::size_t a = 0; a < e0; ++a)
    for (std::size_t b = 0; b < e1; ++b) detail::edt_1d(sq, (a * e1 + b) * e2, 1, e[2], f, d, v, z);
  // middle axis (stride e2)
  for (std::size_t a = 0; a < e0; ++a)
    for (std::size_t c = 0; c < e2; ++c) detail::edt_1d(sq, a * e1 * e2 + c, e2, e[1], f, d, v, z);
  // first axis (stride e1*e2)
  for (std::size_t b = 0; b < e1; ++b)
    for (std::size_t c = 0; c < e2; ++c) detail::edt_1d(sq, b * e2 + c, e1 * e2, e[0], f, d, v, z);

  for (auto& x : sq) x = std::sqrt(x);
  return DistanceField(std::move(sq), false);
}

}  // namespace pathbench
