// Exact polynomials over the rationals, the characteristic polynomial
// (Faddeev-LeVerrier), and the Smith normal form of tI - f over Q[t], whose
// diagonal gives the invariant factors deciding similarity.
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "evim/error.hpp"
#include "evim/matrix.hpp"
#include "evim/rational.hpp"

namespace evim {

// Coefficients lowest-degree first; the top coefficient is nonzero unless
// the polynomial is zero (empty coefficient list).
class RatPoly {
 public:
  RatPoly() = default;
  explicit RatPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
  static RatPoly constant(const Rat& c) { return RatPoly(std::vector<Rat>{c}); }
  static RatPoly t() { return RatPoly({Rat(0), Rat(1)}); }

  bool is_zero() const { return c_.empty(); }
  // degree of the zero polynomial is -1 by convention
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const std::vector<Rat>& coeffs() const { return c_; }
  Rat coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rat(0); }
  Rat leading() const { return c_.empty() ? Rat(0) : c_.back(); }

  bool operator==(const RatPoly& o) const { return c_ == o.c_; }
  bool operator!=(const RatPoly& o) const { return !(*this == o); }

  RatPoly operator+(const RatPoly& o) const {
    std::vector<Rat> r(std::max(c_.size(), o.c_.size()), Rat(0));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) + o.coeff(i);
    return RatPoly(std::move(r));
  }
  RatPoly operator-(const RatPoly& o) const {
    std::vector<Rat> r(std::max(c_.size(), o.c_.size()), Rat(0));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) - o.coeff(i);
    return RatPoly(std::move(r));
  }
  RatPoly operator-() const {
    std::vector<Rat> r = c_;
    for (auto& x : r) x = -x;
    return RatPoly(std::move(r));
  }
  RatPoly operator*(const RatPoly& o) const {
    if (is_zero() || o.is_zero()) return RatPoly();
    std::vector<Rat> r(c_.size() + o.c_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
      for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return RatPoly(std::move(r));
  }
  RatPoly operator*(const Rat& s) const {
    std::vector<Rat> r = c_;
    for (auto& x : r) x *= s;
    return RatPoly(std::move(r));
  }

  Rat eval(const Rat& x) const {
    Rat acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  RatMatrix eval(const RatMatrix& m) const {
    if (!m.is_square()) throw invalid_input("polynomial of a non-square matrix");
    RatMatrix acc(m.rows(), m.rows());
    for (std::size_t i = c_.size(); i-- > 0;) {
      acc = acc * m;
      for (std::size_t d = 0; d < m.rows(); ++d) acc.at(d, d) += c_[i];
    }
    return acc;
  }

  // least i with nonzero coefficient; degree+1 == size() trick keeps 0 safe
  std::size_t valuation() const {
    std::size_t i = 0;
    while (i < c_.size() && c_[i] == 0) ++i;
    return i;
  }

  RatPoly shift_down(std::size_t k) const {  // divide by t^k, must be exact
    if (valuation() < k && !is_zero()) throw invalid_input("t-power division is not exact");
    if (c_.size() <= k) return RatPoly();
    return RatPoly(std::vector<Rat>(c_.begin() + static_cast<long>(k), c_.end()));
  }

  RatPoly monic() const {
    if (is_zero()) return *this;
    Rat inv = Rat(1) / c_.back();
    return *this * inv;
  }

  std::string str(const std::string& var = "t") const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (c_[i] == 0) continue;
      Rat a = c_[i];
      if (!s.empty()) {
        s += (a < 0) ? " - " : " + ";
        if (a < 0) a = -a;
      } else if (a < 0) {
        s += "-";
        a = -a;
      }
      const bool unit = (a == 1 && i > 0);
      if (!unit) s += rat_str(a);
      if (i > 0) {
        if (!unit) s += "*";
        s += var;
        if (i > 1) s += "^" + std::to_string(i);
      }
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rat> c_;
};

// Euclidean division over Q[t].
inline std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b) {
  if (b.is_zero()) throw invalid_input("polynomial division by zero");
  std::vector<Rat> rem(a.coeffs());
  std::vector<Rat> quo;
  long db = b.degree();
  if (static_cast<long>(rem.size()) - 1 >= db) quo.assign(rem.size() - db, Rat(0));
  for (long i = static_cast<long>(rem.size()) - 1; i >= db; --i) {
    if (rem[i] == 0) continue;
    Rat q = rem[i] / b.leading();
    quo[i - db] = q;
    for (long j = 0; j <= db; ++j) rem[i - db + j] -= q * b.coeff(j);
  }
  return {RatPoly(std::move(quo)), RatPoly(std::move(rem))};
}

inline RatPoly poly_gcd(RatPoly a, RatPoly b) {
  while (!b.is_zero()) {
    auto [q, r] = divmod(a, b);
    a = b;
    b = r;
  }
  return a.monic();
}

// chi_f(t) = det(f - tI). Faddeev-LeVerrier gives det(tI - f) = t^n + c_{n-1}
// t^{n-1} + ... + c_0 with only divisions by integers; flip the sign by
// (-1)^n afterwards.
inline RatPoly char_poly(const RatMatrix& f) {
  if (!f.is_square()) throw invalid_input("characteristic polynomial of a non-square matrix");
  const std::size_t n = f.rows();
  std::vector<Rat> c(n + 1, Rat(0));
  c[n] = 1;
  RatMatrix m(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    for (std::size_t d = 0; d < n; ++d) m.at(d, d) += c[n - k + 1];
    m = f * m;
    Rat tr(0);
    for (std::size_t d = 0; d < n; ++d) tr += m.at(d, d);
    c[n - k] = -tr / Rat(static_cast<long>(k));
  }
  if (n % 2 == 1)
    for (auto& x : c) x = -x;
  return RatPoly(std::move(c));
}

// Inverse of an automorphism as a polynomial in it: q(t) = (det g - chi_g(t))
// / ((det g) t), so q(g) = g^{-1}.
inline RatPoly cayley_hamilton_inverse_poly(const RatPoly& chi) {
  Rat d = chi.coeff(0);  // chi(0) = det g
  if (d == 0) throw invalid_input("singular operator has no Cayley-Hamilton inverse");
  RatPoly num = RatPoly::constant(d) - chi;
  return num.shift_down(1) * (Rat(1) / d);
}

// ----- Smith normal form over Q[t] -----

using PolyMatrix = std::vector<std::vector<RatPoly>>;

inline PolyMatrix char_matrix(const RatMatrix& f) {
  // tI - f
  const std::size_t n = f.rows();
  PolyMatrix p(n, std::vector<RatPoly>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      RatPoly e = RatPoly::constant(-f.at(i, j));
      if (i == j) e = e + RatPoly::t();
      p[i][j] = e;
    }
  return p;
}

// Diagonal of the Smith normal form, monic, with the divisibility chain
// d_0 | d_1 | ... enforced.
inline std::vector<RatPoly> smith_normal_form(PolyMatrix m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  std::vector<RatPoly> diag;
  std::size_t top = 0;
  while (top < rows && top < cols) {
    // locate a minimal-degree nonzero entry in the remaining block
    long best_deg = -1;
    std::size_t bi = top, bj = top;
    for (std::size_t i = top; i < rows; ++i)
      for (std::size_t j = top; j < cols; ++j)
        if (!m[i][j].is_zero() && (best_deg < 0 || m[i][j].degree() < best_deg)) {
          best_deg = m[i][j].degree();
          bi = i;
          bj = j;
        }
    if (best_deg < 0) break;  // all-zero block
    std::swap(m[top], m[bi]);
    for (std::size_t i = top; i < rows; ++i) std::swap(m[i][top], m[i][bj]);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = top + 1; i < rows; ++i) {
        if (m[i][top].is_zero()) continue;
        auto [q, r] = divmod(m[i][top], m[top][top]);
        for (std::size_t j = top; j < cols; ++j) m[i][j] = m[i][j] - q * m[top][j];
        if (!r.is_zero()) {
          std::swap(m[top], m[i]);
          clean = false;
        }
      }
      for (std::size_t j = top + 1; j < cols; ++j) {
        if (m[top][j].is_zero()) continue;
        auto [q, r] = divmod(m[top][j], m[top][top]);
        for (std::size_t i = top; i < rows; ++i) m[i][j] = m[i][j] - q * m[i][top];
        if (!r.is_zero()) {
          for (std::size_t i = top; i < rows; ++i) std::swap(m[i][top], m[i][j]);
          clean = false;
        }
      }
      if (!clean) continue;
      // pivot must divide every remaining entry; if not, fold the offender in
      for (std::size_t i = top + 1; i < rows && clean; ++i)
        for (std::size_t j = top + 1; j < cols && clean; ++j) {
          auto [q, r] = divmod(m[i][j], m[top][top]);
          if (!r.is_zero()) {
            for (std::size_t jj = top; jj < cols; ++jj) m[top][jj] = m[top][jj] + m[i][jj];
            clean = false;
          }
        }
    }
    m[top][top] = m[top][top].monic();
    diag.push_back(m[top][top]);
    ++top;
  }
  return diag;
}

// Invariant factors of f: the SNF diagonal of tI - f (all n of them; the
// trivial ones are the constant 1).
inline std::vector<RatPoly> invariant_factors(const RatMatrix& f) {
  if (!f.is_square()) throw invalid_input("invariant factors of a non-square matrix");
  return smith_normal_form(char_matrix(f));
}

}  // namespace evim
