// Finite-dimensional vector spaces over Q with exact arithmetic: Fitting
// decomposition, eventual kernel, the Cayley-Hamilton inverse, the polynomial
// form of f^infty, linear periodicity, the Williams characteristic-polynomial
// invariant, and invariant-factor similarity.
#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "evim/category.hpp"
#include "evim/error.hpp"
#include "evim/matrix.hpp"
#include "evim/poly.hpp"
#include "evim/verdict.hpp"

namespace evim {

struct VectObj {
  std::size_t dim = 0;
};

// Seed for the intertwiner search in the conjugator; the CLI's --seed lands
// here. Everything else in this module is deterministic.
inline std::uint64_t& fdvect_witness_seed() {
  static std::uint64_t seed = 20240405;
  return seed;
}

// g^{-1} = q(g) with q(t) = (det g - chi_g(t)) / ((det g) t), asserted equal
// to the elimination-based inverse.
inline RatMatrix inverse_cayley_hamilton(const RatMatrix& g) {
  if (!g.is_square()) throw invalid_input("inverse_cayley_hamilton: non-square input");
  RatPoly chi = char_poly(g);
  RatPoly q = cayley_hamilton_inverse_poly(chi);  // rejects det = 0
  RatMatrix by_poly = q.eval(g);
  auto by_elim = inverse(g);
  if (!by_elim) throw invalid_input("inverse_cayley_hamilton: singular input");
  if (by_poly != *by_elim)
    throw contract_violation("Cayley-Hamilton inverse disagrees with elimination: " +
                             by_poly.str() + " vs " + by_elim->str());
  return by_poly;
}

struct FittingData {
  RatMatrix ei;  // basis of the eventual image, canonical columns
  RatMatrix ek;  // basis of the eventual kernel
};

// ei f = im(f^dim), ek f = ker(f^dim); X = ei + ek as a direct sum, f
// invertible on ei and nilpotent on ek. All three facts are verified.
inline FittingData fitting(const RatMatrix& f) {
  if (!f.is_square()) throw invalid_input("fitting: non-square input");
  const std::size_t n = f.rows();
  RatMatrix p = f.pow(n);
  FittingData d{image_basis(p), kernel_basis(p)};
  if (d.ei.cols() + d.ek.cols() != n || (n > 0 && !inverse(hcat(d.ei, d.ek))))
    throw contract_violation("fitting: ei + ek is not a direct sum decomposition");
  if (d.ei.cols() > 0) {
    auto r = solve(d.ei, f * d.ei);
    if (!r || rank(*r) != d.ei.cols())
      throw contract_violation("fitting: f is not an automorphism of ei");
  }
  if (!(f.pow(d.ek.cols()) * d.ek).is_zero())
    throw contract_violation("fitting: f is not nilpotent on ek");
  return d;
}

// f^infty = (I - chi_fbar(f)/det fbar)^n, evaluated at the full matrix.
inline RatMatrix f_infinity_poly(const RatMatrix& f) {
  if (!f.is_square()) throw invalid_input("f_infinity_poly: non-square input");
  const std::size_t n = f.rows();
  FittingData fit = fitting(f);
  RatMatrix fbar(0, 0);
  if (fit.ei.cols() > 0) fbar = *solve(fit.ei, f * fit.ei);
  RatPoly chi = char_poly(fbar);
  Rat d = chi.coeff(0);  // det fbar; 1 for the empty restriction
  RatMatrix base = RatMatrix::identity(n) - chi.eval(f) * (Rat(1) / d);
  return base.pow(n);
}

// The explicit span witness r(t)^n with r(t) = t q(t); returned unreduced.
inline RatPoly f_infinity_witness(const RatMatrix& f) {
  if (!f.is_square()) throw invalid_input("f_infinity_witness: non-square input");
  FittingData fit = fitting(f);
  RatMatrix fbar(0, 0);
  if (fit.ei.cols() > 0) fbar = *solve(fit.ei, f * fit.ei);
  RatPoly r = RatPoly::t() * cayley_hamilton_inverse_poly(char_poly(fbar));
  RatPoly acc = RatPoly::constant(Rat(1));
  for (std::size_t i = 0; i < f.rows(); ++i) acc = acc * r;
  return acc;
}

// x in span{f x, f^2 x, ..., f^dim x}; the Krylov span suffices by
// Cayley-Hamilton.
inline bool linearly_periodic(const RatMatrix& f, const RatMatrix& x) {
  if (!f.is_square() || x.cols() != 1 || x.rows() != f.rows())
    throw invalid_input("linearly_periodic: expected a square matrix and a column vector");
  const std::size_t n = f.rows();
  RatMatrix krylov(n, n);
  RatMatrix v = x;
  for (std::size_t k = 0; k < n; ++k) {
    v = f * v;
    for (std::size_t i = 0; i < n; ++i) krylov.at(i, k) = v.at(i, 0);
  }
  if (x.is_zero()) return true;
  return solve(krylov, x).has_value();
}

// Characteristic polynomials of shift-equivalent operators agree up to a
// factor of +-t^p.
inline Verdict williams_check(const RatMatrix& f, const RatMatrix& g) {
  if (!f.is_square() || !g.is_square()) throw invalid_input("williams_check: non-square input");
  RatPoly cf = char_poly(f), cg = char_poly(g);
  const std::size_t i = cf.valuation(), j = cg.valuation();
  RatPoly a = cf.shift_down(i), b = cg.shift_down(j);
  const long p = static_cast<long>(i) - static_cast<long>(j);
  if (a == b)
    return Verdict::pass("chi_f = t^(" + std::to_string(p) + ") chi_g, sign +1");
  if (a == -b)
    return Verdict::pass("chi_f = -t^(" + std::to_string(p) + ") chi_g, sign -1");
  return Verdict::fail("characteristic polynomials differ beyond +-t^p: " + cf.str() +
                       " vs " + cg.str());
}

// ker((f - lambda)^dim): the generalized eigenspace; equals ek f at lambda=0.
inline RatMatrix generalized_eigenspace(const RatMatrix& f, const Rat& lambda) {
  if (!f.is_square()) throw invalid_input("generalized_eigenspace: non-square input");
  RatMatrix shifted = f;
  for (std::size_t i = 0; i < f.rows(); ++i) shifted.at(i, i) -= lambda;
  return kernel_basis(shifted.pow(f.rows()));
}

inline Verdict similar(const RatMatrix& f, const RatMatrix& g) {
  if (!f.is_square() || !g.is_square()) throw invalid_input("similar: non-square input");
  if (f.rows() != g.rows()) throw invalid_input("similar: dimensions differ");
  auto inf = invariant_factors(f);
  auto ing = invariant_factors(g);
  auto list = [](const std::vector<RatPoly>& v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].str();
    return s + "}";
  };
  if (inf == ing) return Verdict::pass("equal invariant factors " + list(inf));
  return Verdict::fail("invariant factors differ: " + list(inf) + " vs " + list(ing));
}

namespace detail {
// Invertible K with K a = b K, searched inside the Sylvester solution space.
inline std::optional<RatMatrix> intertwining_iso(const RatMatrix& a, const RatMatrix& b) {
  const std::size_t n = a.rows();
  if (a == b) return RatMatrix::identity(n);
  RatMatrix sys(n * n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        sys.at(i * n + j, i * n + k) += a.at(k, j);
        sys.at(i * n + j, k * n + j) -= b.at(i, k);
      }
    }
  RatMatrix basis = kernel_basis(sys);
  const std::size_t m = basis.cols();
  if (m == 0) return std::nullopt;
  auto unflatten = [n](const RatMatrix& col) {
    RatMatrix k(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) k.at(i, j) = col.at(i * n + j, 0);
    return k;
  };
  auto usable = [&](const RatMatrix& k) { return det(k) != 0 && k * a == b * k; };
  for (std::size_t c = 0; c < m; ++c) {
    RatMatrix k = unflatten(basis.column(c));
    if (usable(k)) return k;
  }
  for (std::size_t c = 0; c + 1 < m; ++c)
    for (std::size_t d = c + 1; d < m; ++d) {
      RatMatrix k = unflatten(basis.column(c) + basis.column(d));
      if (usable(k)) return k;
      k = unflatten(basis.column(c) - basis.column(d));
      if (usable(k)) return k;
    }
  std::mt19937_64 rng(fdvect_witness_seed());
  long range = 3;
  for (int tries = 0; tries < 600; ++tries) {
    if (tries && tries % 100 == 0) range *= 2;
    std::uniform_int_distribution<long> dist(-range, range);
    RatMatrix comb(n * n, 1);
    for (std::size_t c = 0; c < m; ++c) {
      long w = dist(rng);
      if (w != 0) comb = comb + basis.column(c) * Rat(w);
    }
    RatMatrix k = unflatten(comb);
    if (usable(k)) return k;
  }
  throw contract_violation(
      "fdvect conjugator: operators are similar but no invertible intertwiner was found");
}
}  // namespace detail

struct FDVectCat {
  using Obj = VectObj;
  using Mor = RatMatrix;

  static std::string name() { return "fdvect"; }
  static Obj dom(const Mor& f) { return {f.cols()}; }
  static Obj cod(const Mor& f) { return {f.rows()}; }
  static bool obj_equal(const Obj& a, const Obj& b) { return a.dim == b.dim; }
  static std::size_t obj_size(const Obj& x) { return x.dim; }
  static bool equal(const Mor& f, const Mor& g) { return f == g; }
  static Mor identity(const Obj& x) { return RatMatrix::identity(x.dim); }
  static Mor compose(const Mor& g, const Mor& f) { return g * f; }
  static std::string describe_obj(const Obj& x) { return "Q^" + std::to_string(x.dim); }
  static std::string describe_mor(const Mor& f) { return f.str(); }

  static Factorization<FDVectCat> factorize(const Mor& f) {
    RatMatrix b = image_basis(f);
    auto e = solve(b, f);
    if (!e) throw contract_violation("fdvect factorize: image basis does not span the image");
    return {*e, b};
  }

  static bool is_embedding(const Mor& f) { return rank(f) == f.cols(); }
  static bool is_covering(const Mor& f) { return rank(f) == f.rows(); }

  static Mor invert(const Mor& f) { return inverse_cayley_hamilton(f); }

  static std::optional<Mor> lift_through_embedding(const Mor& j, const Mor& u) {
    if (rank(j) != j.cols()) throw invalid_input("fdvect: lift through a non-embedding");
    if (j.rows() != u.rows()) return std::nullopt;
    return solve(j, u);
  }

  static std::optional<Mor> conjugator(const Mor& a, const Mor& b) {
    if (!a.is_square() || !b.is_square())
      throw invalid_input("fdvect conjugator expects automorphisms");
    if (a.rows() != b.rows()) return std::nullopt;
    if (a == b) return RatMatrix::identity(a.rows());
    if (invariant_factors(a) != invariant_factors(b)) return std::nullopt;
    return detail::intertwining_iso(a, b);
  }

  // X ->> X/ek f: rows are a canonical basis of the annihilator of ek f.
  static Quotient<FDVectCat> initial_algebra_quotient(const Mor& f) {
    require_endo<FDVectCat>(f, "initial_algebra_quotient");
    RatMatrix ek = kernel_basis(f.pow(f.rows()));
    RatMatrix ann = kernel_basis(ek.transpose());  // columns annihilate ek
    return {ann.transpose()};
  }

  // A finite-order rational automorphism part on dim <= 64 has small order;
  // past this bound the literal power sequence will never repeat and the
  // fallback takes over.
  static std::uint64_t power_cap(const Obj& x) { return x.dim + 64; }
  static constexpr bool hom_finite = false;

  // Independent route to the eventual idempotent when no power of f is
  // idempotent: stabilize rank, then project onto im f^k along ker f^k.
  static std::pair<Mor, std::size_t> idempotent_power_fallback(const Mor& f) {
    require_endo<FDVectCat>(f, "idempotent_power_fallback");
    const std::size_t n = f.rows();
    std::size_t index = 0;
    RatMatrix g = RatMatrix::identity(n);
    std::size_t r = n;
    for (std::size_t k = 1; k <= n + 1; ++k) {
      g = f * g;
      std::size_t rk = rank(g);
      if (rk == r) {
        index = k - 1;
        break;
      }
      r = rk;
    }
    RatMatrix p = f.pow(index);
    RatMatrix e = image_basis(p), k = kernel_basis(p);
    RatMatrix s = hcat(e, k);
    auto s_inv = inverse(s);
    if (!s_inv) throw contract_violation("idempotent fallback: im + ker is not a direct sum");
    RatMatrix padded(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < e.cols(); ++j) padded.at(i, j) = e.at(i, j);
    RatMatrix proj = padded * *s_inv;
    if (proj * proj != proj)
      throw contract_violation("idempotent fallback: projection is not idempotent");
    return {proj, index};
  }

  // Bounded maximality probe replacing the (infinite) subobject enumeration:
  // E is a fixpoint, f is invertible on it, and every f-cyclic extension by a
  // standard basis vector outside E breaks the post-fixpoint property.
  static Verdict subobject_oracle_special(const Mor& f, const Mor& tc_embedding) {
    const std::size_t n = f.rows();
    const RatMatrix& e = tc_embedding;
    RatMatrix fe = image_basis(f * e);
    if (!subspace_leq(e, fe) || !subspace_leq(fe, e))
      return Verdict::fail("coalgebra carrier is not a fixpoint: E = " + e.str() +
                           ", fE = " + fe.str());
    if (e.cols() > 0) {
      auto r = solve(e, f * e);
      if (!r || rank(*r) != e.cols())
        return Verdict::fail("f is not invertible on the coalgebra carrier " + e.str());
    }
    std::size_t probes = 0;
    for (std::size_t i = 0; i < n; ++i) {
      RatMatrix x(n, 1);
      x.at(i, 0) = 1;
      if (subspace_contains(e, x)) continue;
      ++probes;
      RatMatrix krylov(n, n + 1);
      RatMatrix v = x;
      for (std::size_t kcol = 0; kcol <= n; ++kcol) {
        for (std::size_t rrow = 0; rrow < n; ++rrow) krylov.at(rrow, kcol) = v.at(rrow, 0);
        v = f * v;
      }
      RatMatrix w = subspace_sum(e, span_columns(krylov));
      RatMatrix fw = image_basis(f * w);
      if (subspace_leq(w, fw))
        return Verdict::fail("strictly larger post-fixpoint found: W = " + w.str());
    }
    return Verdict::pass(std::to_string(probes) +
                         " cyclic extensions probed, none a post-fixpoint");
  }
};

}  // namespace evim
