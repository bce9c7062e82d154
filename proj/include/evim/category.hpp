// The category-instance contract shared by the four concrete categories and
// the shapes the generic algorithms hand around: factorizations, subobjects,
// quotients, and the full eventual-image bundle.
//
// An instance is a stateless struct of statics. Required pieces:
//
//   using Obj, Mor;
//   name(), dom(f), cod(f), obj_equal, obj_size, equal, identity, compose,
//   describe_obj, describe_mor,
//   factorize(f)              covering then embedding, image carrier canonical
//   is_embedding, is_covering
//   invert(f)                 pre: f passes both tests
//   lift_through_embedding(j, u)   unique v with j . v = u, if im u <= im j
//   conjugator(a, b)          equivariant iso between automorphisms, if any
//   initial_algebra_quotient(f)    the covering X ->> ei f, built dually
//   power_cap(X)              step bound for the power-sequence search
//   hom_finite                whether {f, f^2, ...} is always finite
//
// Optional (probed with requires-expressions by the generic code):
//   enumerate_subobjects(X), enumerate_objects(k), enumerate_morphisms(A, B),
//   underlying_table(f), idempotent_power_fallback(f),
//   subobject_oracle_special(f, carrier)
#pragma once

#include <concepts>
#include <cstdint>
#include <optional>
#include <string>

#include "evim/error.hpp"

namespace evim {

template <typename C>
struct Factorization {
  typename C::Mor covering;   // X ->> im f
  typename C::Mor embedding;  // im f >-> Y
};

template <typename C>
struct Subobject {
  typename C::Mor embedding;  // A >-> X
  typename C::Obj carrier() const { return C::dom(embedding); }
};

template <typename C>
struct Quotient {
  typename C::Mor covering;  // X ->> Q
  typename C::Obj carrier() const { return C::cod(covering); }
};

// clang-format off
template <typename C>
concept CategoryInstance = requires(const typename C::Obj& x,
                                    const typename C::Mor& f,
                                    const typename C::Mor& g) {
  { C::name() } -> std::convertible_to<std::string>;
  { C::dom(f) } -> std::same_as<typename C::Obj>;
  { C::cod(f) } -> std::same_as<typename C::Obj>;
  { C::obj_equal(x, x) } -> std::same_as<bool>;
  { C::obj_size(x) } -> std::convertible_to<std::size_t>;
  { C::equal(f, g) } -> std::same_as<bool>;
  { C::identity(x) } -> std::same_as<typename C::Mor>;
  { C::compose(g, f) } -> std::same_as<typename C::Mor>;
  { C::describe_obj(x) } -> std::convertible_to<std::string>;
  { C::describe_mor(f) } -> std::convertible_to<std::string>;
  { C::factorize(f) } -> std::same_as<Factorization<C>>;
  { C::is_embedding(f) } -> std::same_as<bool>;
  { C::is_covering(f) } -> std::same_as<bool>;
  { C::invert(f) } -> std::same_as<typename C::Mor>;
  { C::lift_through_embedding(f, g) } -> std::same_as<std::optional<typename C::Mor>>;
  { C::conjugator(f, g) } -> std::same_as<std::optional<typename C::Mor>>;
  { C::initial_algebra_quotient(f) } -> std::same_as<Quotient<C>>;
  { C::power_cap(x) } -> std::convertible_to<std::uint64_t>;
  { C::hom_finite } -> std::convertible_to<bool>;
};
// clang-format on

template <typename C>
bool is_endo(const typename C::Mor& f) {
  return C::obj_equal(C::dom(f), C::cod(f));
}

template <typename C>
void require_endo(const typename C::Mor& f, const char* who) {
  if (!is_endo<C>(f)) throw invalid_input(std::string(who) + ": morphism is not an endomorphism");
}

// The full output bundle: carrier via iota's domain, both structure maps, the
// idempotent, the induced automorphism and its inverse, and the least n with
// im f^{n+1} = im f^n. `idempotent_exponent` is set when the idempotent was
// found as a literal power f^N.
template <typename C>
struct EventualImageData {
  typename C::Mor endo;
  typename C::Mor iota;
  typename C::Mor pi;
  typename C::Mor idempotent;
  typename C::Mor automorphism;
  typename C::Mor automorphism_inverse;
  std::size_t stabilization_index = 0;
  std::optional<std::uint64_t> idempotent_exponent;

  typename C::Obj carrier() const { return C::dom(iota); }
};

template <typename C>
typename C::Mor mor_pow(const typename C::Mor& f, std::uint64_t n) {
  require_endo<C>(f, "mor_pow");
  typename C::Mor acc = C::identity(C::dom(f));
  typename C::Mor base = f;
  while (n > 0) {
    if (n & 1) acc = C::compose(acc, base);
    base = C::compose(base, base);
    n >>= 1;
  }
  return acc;
}

// Brent's cycle detection on the sequence f, f^2, f^3, ... Returns the least
// period and the least k >= 0 with f^{k+1} = f^{k+1+period}, or nullopt when
// no repeat shows up within `cap` composition steps.
template <typename C>
struct PowerCycle {
  std::uint64_t preperiod;  // in sequence indices; the least exponent e with
                            // f^e = f^{e+period} is preperiod + 1
  std::uint64_t period;
};

template <typename C>
std::optional<PowerCycle<C>> find_power_cycle(const typename C::Mor& f, std::uint64_t cap) {
  require_endo<C>(f, "find_power_cycle");
  std::uint64_t power = 1, lam = 1, steps = 0;
  typename C::Mor tortoise = f;
  typename C::Mor hare = C::compose(f, f);
  while (!C::equal(tortoise, hare)) {
    if (power == lam) {
      tortoise = hare;
      power *= 2;
      lam = 0;
    }
    hare = C::compose(f, hare);
    ++lam;
    if (++steps > cap) return std::nullopt;
  }
  tortoise = f;
  hare = f;
  for (std::uint64_t i = 0; i < lam; ++i) hare = C::compose(f, hare);
  std::uint64_t mu = 0;
  while (!C::equal(tortoise, hare)) {
    tortoise = C::compose(f, tortoise);
    hare = C::compose(f, hare);
    ++mu;
    if (mu > cap) return std::nullopt;
  }
  return PowerCycle<C>{mu, lam};
}

}  // namespace evim
