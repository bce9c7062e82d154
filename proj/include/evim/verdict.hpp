#pragma once

#include <string>
#include <utility>

namespace evim {

// Outcome of a checker or oracle. A failing verdict always carries a concrete
// counterexample in `detail` (the inputs and both sides of the violated
// equation); hypothesis failures are kept distinct from conclusion failures
// so randomized suites cannot pass vacuously.
struct Verdict {
  enum class Kind { Pass, HypothesisFail, ConclusionFail, Skipped, NotApplicable };

  Kind kind = Kind::Pass;
  std::string detail;

  bool ok() const { return kind != Kind::HypothesisFail && kind != Kind::ConclusionFail; }
  bool passed() const { return kind == Kind::Pass; }

  static Verdict pass(std::string d = "") { return {Kind::Pass, std::move(d)}; }
  static Verdict hypothesis_fail(std::string d) { return {Kind::HypothesisFail, std::move(d)}; }
  static Verdict fail(std::string d) { return {Kind::ConclusionFail, std::move(d)}; }
  static Verdict skipped(std::string d) { return {Kind::Skipped, std::move(d)}; }
  static Verdict not_applicable(std::string d) { return {Kind::NotApplicable, std::move(d)}; }

  const char* kind_name() const {
    switch (kind) {
      case Kind::Pass: return "pass";
      case Kind::HypothesisFail: return "hypothesis-fail";
      case Kind::ConclusionFail: return "fail";
      case Kind::Skipped: return "skipped";
      case Kind::NotApplicable: return "not-applicable";
    }
    return "?";
  }
};

}  // namespace evim
