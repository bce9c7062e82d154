// Finite metric spaces with distance-decreasing maps: isometry/surjection
// factorization, the quotient metric inf_n d(f^n x, f^n y), recurrent points,
// epsilon-separation, the sup metric on hom-sets, and the unique idempotent
// in the closure of the power sequence (a finite set here, so closure adds
// nothing -- which is asserted, not assumed).
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "evim/category.hpp"
#include "evim/error.hpp"
#include "evim/finset.hpp"
#include "evim/matrix.hpp"
#include "evim/rational.hpp"
#include "evim/verdict.hpp"

namespace evim {

// First-violation diagnostics for the metric axioms.
inline Verdict validate_metric(const RatMatrix& d) {
  if (d.rows() != d.cols()) return Verdict::fail("distance matrix is not square");
  const std::size_t n = d.rows();
  for (std::size_t i = 0; i < n; ++i)
    if (d.at(i, i) != 0)
      return Verdict::fail("d(" + std::to_string(i) + "," + std::to_string(i) +
                           ") = " + rat_str(d.at(i, i)) + " != 0");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (d.at(i, j) != d.at(j, i))
        return Verdict::fail("symmetry fails at (" + std::to_string(i) + "," +
                             std::to_string(j) + "): " + rat_str(d.at(i, j)) + " vs " +
                             rat_str(d.at(j, i)));
      if (d.at(i, j) <= 0)
        return Verdict::fail("positivity fails at (" + std::to_string(i) + "," +
                             std::to_string(j) + "): " + rat_str(d.at(i, j)));
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (d.at(i, k) > d.at(i, j) + d.at(j, k))
          return Verdict::fail("triangle inequality fails: d(" + std::to_string(i) + "," +
                               std::to_string(k) + ") = " + rat_str(d.at(i, k)) + " > " +
                               rat_str(d.at(i, j)) + " + " + rat_str(d.at(j, k)));
  return Verdict::pass("valid metric on " + std::to_string(n) + " points");
}

struct FinMetric {
  std::size_t n = 0;
  RatMatrix d;  // n x n, validated

  FinMetric() : d(0, 0) {}
  explicit FinMetric(RatMatrix dist) : n(dist.rows()), d(std::move(dist)) {
    Verdict v = validate_metric(d);
    if (!v.ok()) throw invalid_input("finmet: " + v.detail);
  }

  const Rat& dist(std::size_t i, std::size_t j) const { return d.at(i, j); }
  bool operator==(const FinMetric& o) const { return n == o.n && d == o.d; }
};

struct ShortMap {
  FinMetric src, tgt;
  std::vector<std::size_t> table;

  ShortMap() = default;
  ShortMap(FinMetric s, FinMetric t, std::vector<std::size_t> tab)
      : src(std::move(s)), tgt(std::move(t)), table(std::move(tab)) {
    if (table.size() != src.n) throw invalid_input("finmet: table length != source size");
    for (std::size_t v : table)
      if (v >= tgt.n) throw invalid_input("finmet: table entry out of range");
    for (std::size_t x = 0; x < src.n; ++x)
      for (std::size_t y = x + 1; y < src.n; ++y)
        if (tgt.dist(table[x], table[y]) > src.dist(x, y))
          throw invalid_input("finmet: map is not distance-decreasing at the pair (" +
                              std::to_string(x) + "," + std::to_string(y) + ")");
  }

  bool operator==(const ShortMap& o) const {
    return table == o.table && src == o.src && tgt == o.tgt;
  }
};

inline bool is_isometry(const ShortMap& f) {
  for (std::size_t x = 0; x < f.src.n; ++x)
    for (std::size_t y = x + 1; y < f.src.n; ++y)
      if (f.tgt.dist(f.table[x], f.table[y]) != f.src.dist(x, y)) return false;
  return true;
}

struct FinMetCat {
  using Obj = FinMetric;
  using Mor = ShortMap;

  static std::string name() { return "finmet"; }
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
    if (!(f.tgt == g.src)) throw invalid_input("finmet: composition shape mismatch");
    std::vector<std::size_t> t(f.src.n);
    for (std::size_t i = 0; i < f.src.n; ++i) t[i] = g.table[f.table[i]];
    return Mor(f.src, g.tgt, std::move(t));
  }

  static std::string describe_obj(const Obj& x) {
    return std::to_string(x.n) + " points, d = " + x.d.str();
  }
  static std::string describe_mor(const Mor& f) { return detail::table_str(f.table); }

  // image points with the restricted metric; the inclusion is an isometry
  static Factorization<FinMetCat> factorize(const Mor& f) {
    std::vector<std::size_t> image = f.table;
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    RatMatrix rd(image.size(), image.size());
    for (std::size_t a = 0; a < image.size(); ++a)
      for (std::size_t b = 0; b < image.size(); ++b) rd.at(a, b) = f.tgt.dist(image[a], image[b]);
    FinMetric carrier(std::move(rd));
    std::vector<std::size_t> index(f.tgt.n, 0);
    for (std::size_t k = 0; k < image.size(); ++k) index[image[k]] = k;
    std::vector<std::size_t> cov(f.src.n);
    for (std::size_t i = 0; i < f.src.n; ++i) cov[i] = index[f.table[i]];
    return {Mor(f.src, carrier, std::move(cov)), Mor(carrier, f.tgt, std::move(image))};
  }

  static bool is_embedding(const Mor& f) { return is_isometry(f); }
  static bool is_covering(const Mor& f) {
    std::vector<bool> seen(f.tgt.n, false);
    std::size_t hits = 0;
    for (std::size_t v : f.table)
      if (!seen[v]) {
        seen[v] = true;
        ++hits;
      }
    return hits == f.tgt.n;
  }

  static Mor invert(const Mor& f) {
    if (!is_embedding(f) || !is_covering(f))
      throw invalid_input("finmet: invert requires a surjective isometry");
    return Mor(f.tgt, f.src, FinSetCat::invert(FinFunction(f.table)).table);
  }

  static std::optional<Mor> lift_through_embedding(const Mor& j, const Mor& u) {
    if (!is_embedding(j)) throw invalid_input("finmet: lift through a non-embedding");
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

  // equivariant surjective isometry, by backtracking with distance pruning
  static std::optional<Mor> conjugator(const Mor& a, const Mor& b) {
    if (!is_embedding(a) || !is_covering(a) || !is_embedding(b) || !is_covering(b))
      throw invalid_input("finmet conjugator expects automorphisms");
    const std::size_t n = a.src.n;
    if (n != b.src.n) return std::nullopt;
    std::vector<std::size_t> k(n, SIZE_MAX);
    std::vector<bool> used(n, false);
    auto rec = [&](auto&& self, std::size_t i) -> bool {
      if (i == n) return true;
      for (std::size_t cand = 0; cand < n; ++cand) {
        if (used[cand]) continue;
        bool fits = true;
        for (std::size_t j = 0; j < i && fits; ++j)
          fits = a.src.dist(i, j) == b.src.dist(cand, k[j]);
        if (!fits) continue;
        k[i] = cand;
        used[cand] = true;
        bool consistent = true;
        for (std::size_t x = 0; x <= i && consistent; ++x)
          if (k[x] != SIZE_MAX && k[a.table[x]] != SIZE_MAX)
            consistent = (b.table[k[x]] == k[a.table[x]]);
        if (consistent && self(self, i + 1)) return true;
        k[i] = SIZE_MAX;
        used[cand] = false;
      }
      return false;
    };
    if (!rec(rec, 0)) return std::nullopt;
    return Mor(a.src, b.src, std::move(k));
  }

  static Quotient<FinMetCat> initial_algebra_quotient(const Mor& f);

  static std::uint64_t power_cap(const Obj& x) { return detail::saturating_factorial(x.n); }
  static constexpr bool hom_finite = true;

  static std::vector<Mor> enumerate_subobjects(const Obj& x) {
    std::vector<Mor> r;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << x.n); ++mask) {
      std::vector<std::size_t> pts;
      for (std::size_t i = 0; i < x.n; ++i)
        if (mask & (std::uint64_t{1} << i)) pts.push_back(i);
      RatMatrix rd(pts.size(), pts.size());
      for (std::size_t a = 0; a < pts.size(); ++a)
        for (std::size_t b = 0; b < pts.size(); ++b) rd.at(a, b) = x.dist(pts[a], pts[b]);
      r.push_back(Mor(FinMetric(std::move(rd)), x, std::move(pts)));
    }
    return r;
  }

  static const std::vector<std::size_t>& underlying_table(const Mor& f) { return f.table; }
};

// ----- metric-specific operations -----

inline FinFunction underlying_finfun(const ShortMap& f) {
  return FinFunction(f.src.n, f.tgt.n, f.table);
}

// Quotient by x ~ y iff inf_n d(f^n x, f^n y) = 0, with the quotient metric
// d([x],[y]) = inf_n d(f^n x, f^n y). The power sequence of the table is
// eventually periodic, and d(f^n x, f^n y) is non-increasing in n, so the inf
// is the exact min over n <= preperiod + period + 1.
inline Quotient<FinMetCat> FinMetCat::initial_algebra_quotient(const Mor& f) {
  require_endo<FinMetCat>(f, "initial_algebra_quotient");
  const std::size_t n = f.src.n;
  auto cyc = find_power_cycle<FinSetCat>(underlying_finfun(f), detail::saturating_factorial(n));
  if (!cyc) throw contract_violation("finmet: power sequence failed to cycle");
  const std::uint64_t bound = cyc->preperiod + cyc->period + 1;

  RatMatrix inf_d(n, n);
  {
    std::vector<std::size_t> orbit(n);
    for (std::size_t i = 0; i < n; ++i) orbit[i] = i;
    for (std::uint64_t step = 0; step <= bound; ++step) {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
          const Rat& v = f.src.dist(orbit[i], orbit[j]);
          if (step == 0 || v < inf_d.at(i, j)) {
            inf_d.at(i, j) = v;
            inf_d.at(j, i) = v;
          }
        }
      for (std::size_t i = 0; i < n; ++i) orbit[i] = f.table[orbit[i]];
    }
  }

  std::vector<std::size_t> cls(n, SIZE_MAX);
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t r = 0; r < reps.size(); ++r)
      if (inf_d.at(reps[r], i) == 0) {
        cls[i] = r;
        break;
      }
    if (cls[i] == SIZE_MAX) {
      cls[i] = reps.size();
      reps.push_back(i);
    }
  }
  RatMatrix qd(reps.size(), reps.size());
  for (std::size_t a = 0; a < reps.size(); ++a)
    for (std::size_t b = 0; b < reps.size(); ++b) qd.at(a, b) = inf_d.at(reps[a], reps[b]);
  return {Mor(f.src, FinMetric(std::move(qd)), std::move(cls))};
}

inline Factorization<FinMetCat> factorize_short(const ShortMap& f) {
  return FinMetCat::factorize(f);
}

inline std::pair<FinMetric, std::vector<std::size_t>> quotient_metric(const ShortMap& f) {
  Quotient<FinMetCat> q = FinMetCat::initial_algebra_quotient(f);
  return {q.covering.tgt, q.covering.table};
}

// {x : f^k(x) = x for some k >= 1}; at finite scale the closure of the orbit
// is the orbit itself.
inline std::vector<std::size_t> recurrent_points(const ShortMap& f) {
  require_endo<FinMetCat>(f, "recurrent_points");
  return periodic_points(underlying_finfun(f));
}

// Maximal cardinality of a subset whose distinct points are >= eps apart.
// Exact branch-and-bound; n <= 12 guard.
inline std::size_t max_epsilon_separated(const FinMetric& x, const Rat& eps) {
  if (eps <= 0) throw invalid_input("max_epsilon_separated: eps must be positive");
  if (x.n > 12) throw guard_exceeded("max_epsilon_separated: |X| > 12");
  std::size_t best = 0;
  std::vector<std::size_t> chosen;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (chosen.size() + (x.n - i) <= best) return;
    if (i == x.n) {
      best = std::max(best, chosen.size());
      return;
    }
    bool fits = true;
    for (std::size_t c : chosen)
      if (x.dist(c, i) < eps) {
        fits = false;
        break;
      }
    if (fits) {
      chosen.push_back(i);
      self(self, i + 1);
      chosen.pop_back();
    }
    self(self, i + 1);
  };
  rec(rec, 0);
  return best;
}

// d_infty(f, g) = max_x d(f(x), g(x)).
inline Rat sup_metric(const ShortMap& f, const ShortMap& g) {
  if (!(f.src == g.src) || !(f.tgt == g.tgt))
    throw invalid_input("sup_metric: maps must share source and target");
  Rat m(0);
  for (std::size_t i = 0; i < f.src.n; ++i)
    m = std::max(m, f.tgt.dist(f.table[i], g.table[i]));
  return m;
}

// The canonical map between the stabilized image with the subspace metric
// and the quotient X/~ with the inf metric must be a surjective isometry.
inline Verdict quotient_subspace_isometry(const ShortMap& f) {
  require_endo<FinMetCat>(f, "quotient_subspace_isometry");
  Quotient<FinMetCat> q = FinMetCat::initial_algebra_quotient(f);
  std::vector<std::size_t> image(f.src.n);
  for (std::size_t i = 0; i < f.src.n; ++i) image[i] = i;
  for (std::size_t round = 0; round < f.src.n; ++round) {
    std::vector<std::size_t> next;
    for (std::size_t p : image)
      if (std::find(next.begin(), next.end(), f.table[p]) == next.end())
        next.push_back(f.table[p]);
    std::sort(next.begin(), next.end());
    image = std::move(next);
  }
  RatMatrix rd(image.size(), image.size());
  for (std::size_t a = 0; a < image.size(); ++a)
    for (std::size_t b = 0; b < image.size(); ++b) rd.at(a, b) = f.src.dist(image[a], image[b]);
  ShortMap inclusion(FinMetric(std::move(rd)), f.src, image);
  ShortMap canonical = FinMetCat::compose(q.covering, inclusion);
  if (!FinMetCat::is_covering(canonical))
    return Verdict::fail("canonical map is not surjective onto the quotient");
  if (!is_isometry(canonical))
    return Verdict::fail("canonical map is not distance-preserving: subspace metric " +
                         inclusion.src.d.str() + " vs quotient metric " +
                         q.covering.tgt.d.str());
  if (canonical.src.n != canonical.tgt.n)
    return Verdict::fail("subspace and quotient have different sizes");
  return Verdict::pass("subspace and quotient metrics agree through the canonical bijection");
}

// The unique idempotent of Cl{f, f^2, ...}. The power sequence is eventually
// periodic, hence a closed finite set, so the search is the finite-semigroup
// one; the cycle closing is re-verified, as is shortness of the result.
inline ShortMap unique_idempotent_in_closure(const ShortMap& f) {
  require_endo<FinMetCat>(f, "unique_idempotent_in_closure");
  FinFunction table = underlying_finfun(f);
  auto cyc = find_power_cycle<FinSetCat>(table, detail::saturating_factorial(f.src.n));
  if (!cyc) throw contract_violation("finmet: power sequence failed to cycle");
  FinFunction lo = mor_pow<FinSetCat>(table, cyc->preperiod + 1);
  FinFunction hi = mor_pow<FinSetCat>(table, cyc->preperiod + 1 + cyc->period);
  if (!(lo == hi))
    throw contract_violation("unique_idempotent_in_closure: power sequence is not closed");
  FinFunction idem = unique_idempotent_in_powers(table);
  return ShortMap(f.src, f.src, idem.table);  // construction re-checks shortness
}

}  // namespace evim
