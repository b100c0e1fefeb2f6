// Brute-force oracles for small cones: every facet of a full-dimensional
// pointed cone is spanned by dim-1 generators, so trying all subsets finds
// them without any incremental bookkeeping.
#pragma once

#include "conelab/cone.hpp"

#include <algorithm>
#include <functional>
#include <random>

namespace oracle {

using namespace conelab;

inline void subsets(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return;
  for (;;) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Normals h with h.g >= 0 on all of gens and tight on a rank dim-1 subset.
inline std::vector<ZVector> supporting_normals(const std::vector<ZVector>& gens, std::size_t dim) {
  std::vector<ZVector> out;
  subsets(gens.size(), dim - 1, [&](const std::vector<std::size_t>& idx) {
    std::vector<QVector> rows;
    for (auto i : idx) rows.push_back(to_q(gens[i]));
    auto ns = nullspace(rows, dim);
    if (ns.size() != 1) return;
    ZVector n = ns[0];
    bool pos = false, neg = false;
    for (const auto& g : gens) {
      int s = sgn(dot(n, g));
      pos = pos || s > 0;
      neg = neg || s < 0;
    }
    if (pos && neg) return;
    if (neg) n = negate(n);
    n = normalize_ray(n);
    if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
  });
  std::sort(out.begin(), out.end(), [](const ZVector& a, const ZVector& b) { return lex_less(a, b); });
  return out;
}

inline std::vector<ZVector> random_pointed(std::mt19937_64& rng, std::size_t dim, std::size_t n, long bound) {
  std::vector<ZVector> gens;
  while (gens.size() < n) {
    ZVector v(dim);
    for (auto& x : v) x = static_cast<long>(rng() % static_cast<std::uint64_t>(2 * bound + 1)) - bound;
    v[0] = 1 + static_cast<long>(rng() % static_cast<std::uint64_t>(bound));
    gens.push_back(v);
  }
  return gens;
}

} // namespace oracle
