// Test-only oracles, independent of the library's algorithm paths: Laplace
// char-poly, direct set iteration of images, and the exhaustive greatest
// post-fixpoint over subsets of a table.
#pragma once

#include <evim/evim.hpp>

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

namespace evim::oracle {

// det(f - tI) by Laplace expansion over polynomial entries; exponential, for
// cross-checking small dimensions only.
inline RatPoly char_poly_minors(const RatMatrix& f) {
  const std::size_t n = f.rows();
  std::vector<std::vector<RatPoly>> p(n, std::vector<RatPoly>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      p[i][j] = RatPoly::constant(f.at(i, j));
      if (i == j) p[i][j] = p[i][j] - RatPoly::t();
    }
  auto rec = [&](auto&& self, std::vector<std::size_t> rows,
                 std::vector<std::size_t> cols) -> RatPoly {
    if (rows.empty()) return RatPoly::constant(Rat(1));
    RatPoly acc;
    for (std::size_t k = 0; k < cols.size(); ++k) {
      std::vector<std::size_t> sub_rows(rows.begin() + 1, rows.end());
      std::vector<std::size_t> sub_cols = cols;
      sub_cols.erase(sub_cols.begin() + static_cast<long>(k));
      RatPoly term = p[rows[0]][cols[k]] * self(self, sub_rows, sub_cols);
      acc = (k % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
  };
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  return rec(rec, idx, idx);
}

// im f^k as a plain point set, by k rounds of direct image.
inline std::vector<std::size_t> image_by_iteration(const std::vector<std::size_t>& t,
                                                   std::size_t k) {
  std::set<std::size_t> s;
  for (std::size_t i = 0; i < t.size(); ++i) s.insert(i);
  for (std::size_t round = 0; round < k; ++round) {
    std::set<std::size_t> next;
    for (std::size_t p : s) next.insert(t[p]);
    s = std::move(next);
  }
  return {s.begin(), s.end()};
}

// Union of all post-fixpoints A (subsets with A contained in t(A)), found by
// full enumeration; this is the greatest one.
inline std::vector<std::size_t> greatest_post_fixpoint(const std::vector<std::size_t>& t) {
  const std::size_t n = t.size();
  std::uint64_t best = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::uint64_t image = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::uint64_t{1} << i)) image |= std::uint64_t{1} << t[i];
    if ((mask & image) == mask) best |= mask;  // mask <= image(mask)
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i)
    if (best & (std::uint64_t{1} << i)) out.push_back(i);
  return out;
}

}  // namespace evim::oracle
