// Finite posets with monotone maps. Coverings are the surjections; embeddings
// are the order-reflecting injections, so the canonical factorization gives
// the image with the order induced from the target. Non-transitive or
// non-antisymmetric input is an error, never silently repaired.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "evim/category.hpp"
#include "evim/error.hpp"
#include "evim/finset.hpp"
#include "evim/verdict.hpp"

namespace evim {

inline Verdict validate_poset(std::size_t n, const std::vector<std::uint8_t>& leq) {
  if (leq.size() != n * n) return Verdict::fail("order matrix has the wrong shape");
  auto at = [&](std::size_t i, std::size_t j) { return leq[i * n + j] != 0; };
  for (std::size_t i = 0; i < n; ++i)
    if (!at(i, i)) return Verdict::fail("reflexivity fails at " + std::to_string(i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && at(i, j) && at(j, i))
        return Verdict::fail("antisymmetry fails at (" + std::to_string(i) + "," +
                             std::to_string(j) + ")");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (at(i, j) && at(j, k) && !at(i, k))
          return Verdict::fail("transitivity fails: " + std::to_string(i) + " <= " +
                               std::to_string(j) + " <= " + std::to_string(k) +
                               " but not " + std::to_string(i) + " <= " + std::to_string(k));
  return Verdict::pass("valid order on " + std::to_string(n) + " points");
}

struct FinPoset {
  std::size_t n = 0;
  std::vector<std::uint8_t> rel;  // n x n, row-major; validated

  FinPoset() = default;
  FinPoset(std::size_t size, std::vector<std::uint8_t> leq_matrix)
      : n(size), rel(std::move(leq_matrix)) {
    Verdict v = validate_poset(n, rel);
    if (!v.ok()) throw invalid_input("finposet: " + v.detail);
  }

  static FinPoset discrete(std::size_t size) {
    std::vector<std::uint8_t> r(size * size, 0);
    for (std::size_t i = 0; i < size; ++i) r[i * size + i] = 1;
    return FinPoset(size, std::move(r));
  }

  static FinPoset chain(std::size_t size) {
    std::vector<std::uint8_t> r(size * size, 0);
    for (std::size_t i = 0; i < size; ++i)
      for (std::size_t j = i; j < size; ++j) r[i * size + j] = 1;
    return FinPoset(size, std::move(r));
  }

  bool leq(std::size_t i, std::size_t j) const { return rel[i * n + j] != 0; }
  bool operator==(const FinPoset& o) const { return n == o.n && rel == o.rel; }
};

struct MonotoneMap {
  FinPoset src, tgt;
  std::vector<std::size_t> table;

  MonotoneMap() = default;
  MonotoneMap(FinPoset s, FinPoset t, std::vector<std::size_t> tab)
      : src(std::move(s)), tgt(std::move(t)), table(std::move(tab)) {
    if (table.size() != src.n) throw invalid_input("finposet: table length != source size");
    for (std::size_t v : table)
      if (v >= tgt.n) throw invalid_input("finposet: table entry out of range");
    for (std::size_t x = 0; x < src.n; ++x)
      for (std::size_t y = 0; y < src.n; ++y)
        if (src.leq(x, y) && !tgt.leq(table[x], table[y]))
          throw invalid_input("finposet: map is not monotone at the pair (" + std::to_string(x) +
                              "," + std::to_string(y) + ")");
  }

  bool operator==(const MonotoneMap& o) const {
    return table == o.table && src == o.src && tgt == o.tgt;
  }
};

struct FinPosetCat {
  using Obj = FinPoset;
  using Mor = MonotoneMap;

  static std::string name() { return "finposet"; }
  static Obj dom(const Mor& f) { return f.src; }
  static Obj cod(const Mor& f) { return f.tgt; }
  static bool obj_equal(const Obj& a, const Obj& b) { return a == b; }
  static std::size_t obj_size(const Obj& x) { return x.n; }
  static bool equal(const Mor& f, const Mor& g) { return f == g; }

  static Mor identity(const Obj& x) {
    std::vector<std::size_t> t(x.n);
    for (std::size_t i = 0; i < x.n; ++i) t[i] = i;
    return Mor(x, x, std::move(t));
  }

  static Mor compose(const Mor& g, const Mor& f) {
    if (!(f.tgt == g.src)) throw invalid_input("finposet: composition shape mismatch");
    std::vector<std::size_t> t(f.src.n);
    for (std::size_t i = 0; i < f.src.n; ++i) t[i] = g.table[f.table[i]];
    return Mor(f.src, g.tgt, std::move(t));
  }

  static std::string describe_obj(const Obj& x) {
    std::string pairs;
    for (std::size_t i = 0; i < x.n; ++i)
      for (std::size_t j = 0; j < x.n; ++j)
        if (i != j && x.leq(i, j))
          pairs += (pairs.empty() ? "" : " ") + std::to_string(i) + "<=" + std::to_string(j);
    return std::to_string(x.n) + " points" + (pairs.empty() ? "" : ", " + pairs);
  }
  static std::string describe_mor(const Mor& f) { return detail::table_str(f.table); }

  static Factorization<FinPosetCat> factorize(const Mor& f) {
    std::vector<std::size_t> image = f.table;
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    std::vector<std::uint8_t> rel(image.size() * image.size(), 0);
    for (std::size_t a = 0; a < image.size(); ++a)
      for (std::size_t b = 0; b < image.size(); ++b)
        rel[a * image.size() + b] = f.tgt.leq(image[a], image[b]) ? 1 : 0;
    FinPoset carrier(image.size(), std::move(rel));
    std::vector<std::size_t> index(f.tgt.n, 0);
    for (std::size_t k = 0; k < image.size(); ++k) index[image[k]] = k;
    std::vector<std::size_t> cov(f.src.n);
    for (std::size_t i = 0; i < f.src.n; ++i) cov[i] = index[f.table[i]];
    return {Mor(f.src, carrier, std::move(cov)), Mor(carrier, f.tgt, std::move(image))};
  }

  // order-reflecting injection
  static bool is_embedding(const Mor& f) {
    FinFunction t(f.src.n, f.tgt.n, f.table);
    if (!is_injective_table(t)) return false;
    for (std::size_t x = 0; x < f.src.n; ++x)
      for (std::size_t y = 0; y < f.src.n; ++y)
        if (f.tgt.leq(f.table[x], f.table[y]) && !f.src.leq(x, y)) return false;
    return true;
  }

  static bool is_covering(const Mor& f) {
    return is_surjective_table(FinFunction(f.src.n, f.tgt.n, f.table));
  }

  static Mor invert(const Mor& f) {
    if (!is_embedding(f) || !is_covering(f))
      throw invalid_input("finposet: invert requires an order-isomorphism");
    // monotonicity of the inverse is re-validated on construction
    return Mor(f.tgt, f.src, FinSetCat::invert(FinFunction(f.table)).table);
  }

  static std::optional<Mor> lift_through_embedding(const Mor& j, const Mor& u) {
    if (!is_embedding(j)) throw invalid_input("finposet: lift through a non-embedding");
    if (!(j.tgt == u.tgt)) return std::nullopt;
    std::vector<std::size_t> back(j.tgt.n, SIZE_MAX);
    for (std::size_t a = 0; a < j.src.n; ++a) back[j.table[a]] = a;
    std::vector<std::size_t> t(u.src.n);
    for (std::size_t i = 0; i < u.src.n; ++i) {
      if (back[u.table[i]] == SIZE_MAX) return std::nullopt;
      t[i] = back[u.table[i]];
    }
    return Mor(u.src, j.src, std::move(t));
  }

  // equivariant order-isomorphism by backtracking
  static std::optional<Mor> conjugator(const Mor& a, const Mor& b) {
    if (!is_embedding(a) || !is_covering(a) || !is_embedding(b) || !is_covering(b))
      throw invalid_input("finposet conjugator expects automorphisms");
    const std::size_t n = a.src.n;
    if (n != b.src.n) return std::nullopt;
    std::vector<std::size_t> k(n, SIZE_MAX);
    std::vector<bool> used(n, false);
    auto rec = [&](auto&& self, std::size_t i) -> bool {
      if (i == n) return true;
      for (std::size_t cand = 0; cand < n; ++cand) {
        if (used[cand]) continue;
        bool fits = true;
        for (std::size_t j = 0; j <= i && fits; ++j) {
          std::size_t kj = (j == i) ? cand : k[j];
          fits = (a.src.leq(i, j) == b.src.leq(cand, kj)) &&
                 (a.src.leq(j, i) == b.src.leq(kj, cand));
        }
        if (!fits) continue;
        k[i] = cand;
        used[cand] = true;
        bool consistent = true;
        for (std::size_t x = 0; x <= i && consistent; ++x)
          if (k[a.table[x]] != SIZE_MAX) consistent = (b.table[k[x]] == k[a.table[x]]);
        if (consistent && self(self, i + 1)) return true;
        k[i] = SIZE_MAX;
        used[cand] = false;
      }
      return false;
    };
    if (!rec(rec, 0)) return std::nullopt;
    return Mor(a.src, b.src, std::move(k));
  }

  // classes of x ~ y iff f^n(x) = f^n(y), ordered by the order of the f^n
  // values; least representative labels the class.
  static Quotient<FinPosetCat> initial_algebra_quotient(const Mor& f) {
    require_endo<FinPosetCat>(f, "initial_algebra_quotient");
    const std::size_t n = f.src.n;
    Mor h = mor_pow<FinPosetCat>(f, n);
    std::vector<std::size_t> cls_of(n, SIZE_MAX);
    std::vector<std::size_t> rep_value;
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t r = 0; r < rep_value.size(); ++r)
        if (rep_value[r] == h.table[x]) {
          cls_of[x] = r;
          break;
        }
      if (cls_of[x] == SIZE_MAX) {
        cls_of[x] = rep_value.size();
        rep_value.push_back(h.table[x]);
      }
    }
    const std::size_t m = rep_value.size();
    std::vector<std::uint8_t> rel(m * m, 0);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b)
        rel[a * m + b] = f.src.leq(rep_value[a], rep_value[b]) ? 1 : 0;
    return {Mor(f.src, FinPoset(m, std::move(rel)), std::move(cls_of))};
  }

  static std::uint64_t power_cap(const Obj& x) { return detail::saturating_factorial(x.n); }
  static constexpr bool hom_finite = true;
  static constexpr bool concrete_elements = true;

  static std::vector<Obj> enumerate_objects(std::size_t max_size) {
    std::vector<Obj> out;
    for (std::size_t n = 1; n <= max_size; ++n) {
      const std::size_t off_diag = n * n - n;
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << off_diag); ++mask) {
        std::vector<std::uint8_t> rel(n * n, 0);
        std::size_t bit = 0;
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) {
            if (i == j)
              rel[i * n + j] = 1;
            else
              rel[i * n + j] = (mask >> bit++) & 1;
          }
        if (validate_poset(n, rel).ok()) out.emplace_back(n, std::move(rel));
      }
    }
    return out;
  }

  static std::vector<Mor> enumerate_morphisms(const Obj& a, const Obj& b) {
    std::vector<Mor> out;
    if (a.n == 0) {
      out.push_back(Mor(a, b, {}));
      return out;
    }
    if (b.n == 0) return out;
    std::vector<std::size_t> t(a.n, 0);
    auto monotone = [&]() {
      for (std::size_t x = 0; x < a.n; ++x)
        for (std::size_t y = 0; y < a.n; ++y)
          if (a.leq(x, y) && !b.leq(t[x], t[y])) return false;
      return true;
    };
    while (true) {
      if (monotone()) out.push_back(Mor(a, b, t));
      std::size_t i = 0;
      while (i < a.n && ++t[i] == b.n) t[i++] = 0;
      if (i == a.n) break;
    }
    return out;
  }

  static std::vector<Mor> enumerate_subobjects(const Obj& x) {
    std::vector<Mor> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << x.n); ++mask) {
      std::vector<std::size_t> pts;
      for (std::size_t i = 0; i < x.n; ++i)
        if (mask & (std::uint64_t{1} << i)) pts.push_back(i);
      std::vector<std::uint8_t> rel(pts.size() * pts.size(), 0);
      for (std::size_t a = 0; a < pts.size(); ++a)
        for (std::size_t b = 0; b < pts.size(); ++b)
          rel[a * pts.size() + b] = x.leq(pts[a], pts[b]) ? 1 : 0;
      FinPoset carrier(pts.size(), std::move(rel));
      out.push_back(Mor(std::move(carrier), x, std::move(pts)));
    }
    return out;
  }

  static const std::vector<std::size_t>& underlying_table(const Mor& f) { return f.table; }
};

inline Factorization<FinPosetCat> factorize_monotone(const MonotoneMap& f) {
  return FinPosetCat::factorize(f);
}

}  // namespace evim

#include "evim/core.hpp"

namespace evim {

// Chain algorithm on the poset instance, plus the section's extra facts: the
// induced map is an order-automorphism and its inverse is the power
// fbar^{order-1}.
inline EventualImageData<FinPosetCat> eventual_image_poset(const MonotoneMap& f) {
  EventualImageData<FinPosetCat> d = eventual_image_chain<FinPosetCat>(f);
  if (!FinPosetCat::is_embedding(d.automorphism) || !FinPosetCat::is_covering(d.automorphism))
    throw contract_violation("eventual_image_poset: induced map is not an order-automorphism");
  std::uint64_t order = 1;
  for (std::size_t len : cycle_type(FinFunction(d.automorphism.table)))
    order = std::lcm(order, static_cast<std::uint64_t>(len));
  if (!FinPosetCat::equal(mor_pow<FinPosetCat>(d.automorphism, order - 1),
                          d.automorphism_inverse))
    throw contract_violation("eventual_image_poset: fbar^{order-1} is not the inverse");
  return d;
}

}  // namespace evim
