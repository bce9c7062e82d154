// Finite sets with the surjection/injection factorization, plus the finite
// semigroup facts: periodic points, the back-and-forth evaluation of the
// eventual idempotent, f^{|X|!}, the unique idempotent power, and cycle-type
// conjugacy of permutations.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "evim/category.hpp"
#include "evim/error.hpp"
#include "evim/verdict.hpp"

namespace evim {

struct FinSetObj {
  std::size_t size = 0;
};

struct FinFunction {
  std::size_t dom_size = 0;
  std::size_t cod_size = 0;
  std::vector<std::size_t> table;

  FinFunction() = default;
  FinFunction(std::size_t dom, std::size_t cod, std::vector<std::size_t> t)
      : dom_size(dom), cod_size(cod), table(std::move(t)) {
    if (table.size() != dom_size) throw invalid_input("finset: table length != domain size");
    for (std::size_t v : table)
      if (v >= cod_size) throw invalid_input("finset: table entry out of range");
  }
  // endomorphism shorthand
  explicit FinFunction(std::vector<std::size_t> t) : FinFunction(t.size(), t.size(), t) {}

  std::size_t operator()(std::size_t x) const { return table.at(x); }
  bool operator==(const FinFunction& o) const = default;
};

namespace detail {
inline std::string table_str(const std::vector<std::size_t>& t) {
  std::string s = "[";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(t[i]);
  }
  return s + "]";
}

inline std::uint64_t saturating_factorial(std::size_t n) {
  std::uint64_t r = 1;
  for (std::size_t k = 2; k <= n; ++k) {
    if (r > UINT64_MAX / k) return UINT64_MAX;
    r *= k;
  }
  return r;
}
}  // namespace detail

inline bool is_injective_table(const FinFunction& f) {
  std::vector<bool> seen(f.cod_size, false);
  for (std::size_t v : f.table) {
    if (seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

inline bool is_surjective_table(const FinFunction& f) {
  std::vector<bool> seen(f.cod_size, false);
  std::size_t hits = 0;
  for (std::size_t v : f.table)
    if (!seen[v]) {
      seen[v] = true;
      ++hits;
    }
  return hits == f.cod_size;
}

struct FinSetCat {
  using Obj = FinSetObj;
  using Mor = FinFunction;

  static std::string name() { return "finset"; }
  static Obj dom(const Mor& f) { return {f.dom_size}; }
  static Obj cod(const Mor& f) { return {f.cod_size}; }
  static bool obj_equal(const Obj& a, const Obj& b) { return a.size == b.size; }
  static std::size_t obj_size(const Obj& x) { return x.size; }
  static bool equal(const Mor& f, const Mor& g) { return f == g; }

  static Mor identity(const Obj& x) {
    std::vector<std::size_t> t(x.size);
    std::iota(t.begin(), t.end(), std::size_t{0});
    return Mor(x.size, x.size, std::move(t));
  }

  static Mor compose(const Mor& g, const Mor& f) {  // g after f
    if (f.cod_size != g.dom_size) throw invalid_input("finset: composition shape mismatch");
    std::vector<std::size_t> t(f.dom_size);
    for (std::size_t i = 0; i < f.dom_size; ++i) t[i] = g.table[f.table[i]];
    return Mor(f.dom_size, g.cod_size, std::move(t));
  }

  static std::string describe_obj(const Obj& x) { return std::to_string(x.size) + " points"; }
  static std::string describe_mor(const Mor& f) { return detail::table_str(f.table); }

  // image as sorted distinct values; surjection onto it, inclusion out of it
  static Factorization<FinSetCat> factorize(const Mor& f) {
    std::vector<std::size_t> image = f.table;
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    std::vector<std::size_t> index(f.cod_size, 0);
    for (std::size_t k = 0; k < image.size(); ++k) index[image[k]] = k;
    std::vector<std::size_t> cov(f.dom_size);
    for (std::size_t i = 0; i < f.dom_size; ++i) cov[i] = index[f.table[i]];
    const std::size_t image_size = image.size();
    return {Mor(f.dom_size, image_size, std::move(cov)),
            Mor(image_size, f.cod_size, std::move(image))};
  }

  static bool is_embedding(const Mor& f) { return is_injective_table(f); }
  static bool is_covering(const Mor& f) { return is_surjective_table(f); }

  // inverse via cycle decomposition (bijections only)
  static Mor invert(const Mor& f) {
    if (f.dom_size != f.cod_size || !is_injective_table(f) || !is_surjective_table(f))
      throw invalid_input("finset: invert requires a bijection");
    std::vector<std::size_t> inv(f.dom_size);
    std::vector<bool> done(f.dom_size, false);
    for (std::size_t s = 0; s < f.dom_size; ++s) {
      if (done[s]) continue;
      std::size_t x = s;
      do {
        inv[f.table[x]] = x;
        done[x] = true;
        x = f.table[x];
      } while (x != s);
    }
    return Mor(f.dom_size, f.cod_size, std::move(inv));
  }

  // unique v with j . v = u (j injective); nullopt when im u is not inside im j
  static std::optional<Mor> lift_through_embedding(const Mor& j, const Mor& u) {
    if (!is_embedding(j)) throw invalid_input("finset: lift through a non-embedding");
    if (j.cod_size != u.cod_size) return std::nullopt;
    std::vector<std::size_t> back(j.cod_size, SIZE_MAX);
    for (std::size_t a = 0; a < j.dom_size; ++a) back[j.table[a]] = a;
    std::vector<std::size_t> t(u.dom_size);
    for (std::size_t i = 0; i < u.dom_size; ++i) {
      if (back[u.table[i]] == SIZE_MAX) return std::nullopt;
      t[i] = back[u.table[i]];
    }
    return Mor(u.dom_size, j.dom_size, std::move(t));
  }

  static std::optional<Mor> conjugator(const Mor& a, const Mor& b);
  static Quotient<FinSetCat> initial_algebra_quotient(const Mor& f);

  static std::uint64_t power_cap(const Obj& x) { return detail::saturating_factorial(x.size); }
  static constexpr bool hom_finite = true;
  static constexpr bool concrete_elements = true;

  // ----- enumeration hooks (oracle use) -----

  static std::vector<Obj> enumerate_objects(std::size_t max_size) {
    std::vector<Obj> r;
    for (std::size_t n = 1; n <= max_size; ++n) r.push_back({n});
    return r;
  }

  static std::vector<Mor> enumerate_morphisms(const Obj& a, const Obj& b) {
    std::vector<Mor> r;
    if (a.size == 0) {
      r.push_back(Mor(0, b.size, {}));
      return r;
    }
    if (b.size == 0) return r;
    std::vector<std::size_t> t(a.size, 0);
    while (true) {
      r.push_back(Mor(a.size, b.size, t));
      std::size_t i = 0;
      while (i < a.size && ++t[i] == b.size) t[i++] = 0;
      if (i == a.size) break;
    }
    return r;
  }

  static std::vector<Mor> enumerate_subobjects(const Obj& x) {
    std::vector<Mor> r;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << x.size); ++mask) {
      std::vector<std::size_t> pts;
      for (std::size_t i = 0; i < x.size; ++i)
        if (mask & (std::uint64_t{1} << i)) pts.push_back(i);
      const std::size_t count = pts.size();
      r.push_back(Mor(count, x.size, std::move(pts)));
    }
    return r;
  }

  static const std::vector<std::size_t>& underlying_table(const Mor& f) { return f.table; }
};

inline Factorization<FinSetCat> factorize_finset(const FinFunction& f) {
  return FinSetCat::factorize(f);
}

// ----- finite semigroup operations -----

// {x : f^k(x) = x for some k >= 1}, sorted. Walks each orbit at most |X| steps.
inline std::vector<std::size_t> periodic_points(const FinFunction& f) {
  require_endo<FinSetCat>(f, "periodic_points");
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < f.dom_size; ++x) {
    std::size_t y = x;
    for (std::size_t k = 0; k < f.dom_size; ++k) {
      y = f.table[y];
      if (y == x) {
        out.push_back(x);
        break;
      }
    }
  }
  return out;
}

// f^infty(x) by the back-and-forth rule: push x forward |X| times into the
// eventual image, then walk the inverse of the induced permutation the same
// number of times (a forward walk of the complementary cycle distance).
inline std::size_t back_and_forth(const FinFunction& f, std::size_t x) {
  require_endo<FinSetCat>(f, "back_and_forth");
  if (x >= f.dom_size) throw invalid_input("back_and_forth: point out of range");
  const std::size_t n = f.dom_size;
  std::size_t y = x;
  for (std::size_t k = 0; k < n; ++k) y = f.table[y];
  std::size_t cycle_len = 1;
  for (std::size_t z = f.table[y]; z != y; z = f.table[z]) ++cycle_len;
  std::size_t back = (cycle_len - (n % cycle_len)) % cycle_len;
  for (std::size_t k = 0; k < back; ++k) y = f.table[y];
  return y;
}

// f^{|X|!} by exponentiation by squaring; |X| <= 12 keeps the exponent in 64
// bits with slack.
inline FinFunction factorial_power(const FinFunction& f) {
  require_endo<FinSetCat>(f, "factorial_power");
  if (f.dom_size > 12)
    throw guard_exceeded("factorial_power: |X| > 12 (exponent guard)");
  return mor_pow<FinSetCat>(f, detail::saturating_factorial(f.dom_size));
}

// The one idempotent in {f, f^2, ...}; uniqueness is re-verified by scanning
// every exponent up to preperiod + period.
inline FinFunction unique_idempotent_in_powers(const FinFunction& f) {
  require_endo<FinSetCat>(f, "unique_idempotent_in_powers");
  auto cyc = find_power_cycle<FinSetCat>(f, FinSetCat::power_cap({f.dom_size}));
  if (!cyc) throw contract_violation("finset power sequence failed to cycle within |X|!");
  const std::uint64_t first = cyc->preperiod + 1;
  std::uint64_t n = ((first + cyc->period - 1) / cyc->period) * cyc->period;
  if (n == 0) n = cyc->period;
  FinFunction idem = mor_pow<FinSetCat>(f, n);
  if (!(FinSetCat::compose(idem, idem) == idem))
    throw contract_violation("unique_idempotent_in_powers: detected power is not idempotent");
  std::size_t found = 0;
  FinFunction p = f;
  for (std::uint64_t e = 1; e <= cyc->preperiod + cyc->period; ++e) {
    if (FinSetCat::compose(p, p) == p) ++found;
    p = FinSetCat::compose(f, p);
  }
  if (found != 1)
    throw contract_violation("unique_idempotent_in_powers: " + std::to_string(found) +
                             " idempotents in the power list");
  return idem;
}

// ----- permutation conjugacy -----

using CycleType = std::vector<std::size_t>;  // sorted multiset of cycle lengths

inline CycleType cycle_type(const FinFunction& p) {
  if (p.dom_size != p.cod_size || !is_injective_table(p))
    throw invalid_input("cycle_type: not a permutation");
  CycleType type;
  std::vector<bool> seen(p.dom_size, false);
  for (std::size_t s = 0; s < p.dom_size; ++s) {
    if (seen[s]) continue;
    std::size_t len = 0, x = s;
    do {
      seen[x] = true;
      ++len;
      x = p.table[x];
    } while (x != s);
    type.push_back(len);
  }
  std::sort(type.begin(), type.end());
  return type;
}

namespace detail {
// cycles listed smallest-first, each starting at its least element
inline std::vector<std::vector<std::size_t>> canonical_cycles(const FinFunction& p) {
  std::vector<std::vector<std::size_t>> cycles;
  std::vector<bool> seen(p.dom_size, false);
  for (std::size_t s = 0; s < p.dom_size; ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> c;
    std::size_t x = s;
    do {
      seen[x] = true;
      c.push_back(x);
      x = p.table[x];
    } while (x != s);
    cycles.push_back(std::move(c));
  }
  std::sort(cycles.begin(), cycles.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a[0] < b[0];
  });
  return cycles;
}
}  // namespace detail

// Permutations are conjugate iff their cycle types agree; on success the
// verdict narrates an explicit conjugating bijection.
inline std::optional<FinFunction> conjugating_bijection(const FinFunction& p,
                                                        const FinFunction& q) {
  if (cycle_type(p) != cycle_type(q)) return std::nullopt;
  auto cp = detail::canonical_cycles(p);
  auto cq = detail::canonical_cycles(q);
  std::vector<std::size_t> k(p.dom_size);
  for (std::size_t c = 0; c < cp.size(); ++c)
    for (std::size_t i = 0; i < cp[c].size(); ++i) k[cp[c][i]] = cq[c][i];
  return FinFunction(p.dom_size, q.dom_size, std::move(k));
}

inline Verdict conjugate(const FinFunction& p, const FinFunction& q) {
  CycleType tp = cycle_type(p), tq = cycle_type(q);  // also rejects non-bijections
  auto k = conjugating_bijection(p, q);
  if (!k)
    return Verdict::fail("cycle types differ: " + detail::table_str(tp) + " vs " +
                         detail::table_str(tq));
  if (!(FinSetCat::compose(*k, p) == FinSetCat::compose(q, *k)))
    throw contract_violation("conjugate: constructed bijection fails to intertwine");
  return Verdict::pass("conjugating bijection " + detail::table_str(k->table));
}

inline std::optional<FinFunction> FinSetCat::conjugator(const Mor& a, const Mor& b) {
  if (!is_embedding(a) || !is_covering(a) || !is_embedding(b) || !is_covering(b))
    throw invalid_input("finset conjugator expects automorphisms");
  return conjugating_bijection(a, b);
}

// Dual construction: the finest quotient through which f eventually factors,
// classes x ~ y iff f^{|X|}(x) = f^{|X|}(y), labelled by least representative.
inline Quotient<FinSetCat> FinSetCat::initial_algebra_quotient(const Mor& f) {
  require_endo<FinSetCat>(f, "initial_algebra_quotient");
  Mor h = mor_pow<FinSetCat>(f, f.dom_size);
  std::map<std::size_t, std::size_t> class_of_value;  // h-value -> class index
  std::vector<std::size_t> cov(f.dom_size);
  for (std::size_t x = 0; x < f.dom_size; ++x) {
    auto [it, fresh] = class_of_value.try_emplace(h.table[x], class_of_value.size());
    cov[x] = it->second;
  }
  return {Mor(f.dom_size, class_of_value.size(), std::move(cov))};
}

}  // namespace evim
