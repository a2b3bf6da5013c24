#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "lorentz/cone.hpp"

namespace lorentz {

enum class Verdict { Semipositive, NotSemipositive, Undecided, NoVerdict };

constexpr std::string_view to_string(Verdict v) {
  switch (v) {
  case Verdict::Semipositive:
    return "semipositive";
  case Verdict::NotSemipositive:
    return "not_semipositive";
  case Verdict::Undecided:
    return "undecided";
  case Verdict::NoVerdict:
    return "no_verdict";
  }
  return "no_verdict";
}

/// Outcome of a semipositivity test.
///
/// Semipositive carries a primal witness x (x in L, Ax in int L);
/// NotSemipositive carries a dual witness y (-y in L, A^T y in L).
/// Undecided and NoVerdict carry no proof; `margin` then holds the best
/// primal margin the search reached, and `band` the strict tolerance it was
/// judged against.
struct Certificate {
  Verdict verdict = Verdict::NoVerdict;
  std::optional<Vector> primal;
  std::optional<Vector> dual;
  double margin = 0.0;
  double band = 0.0;
  std::string method;

  [[nodiscard]] bool definite() const {
    return verdict == Verdict::Semipositive || verdict == Verdict::NotSemipositive;
  }

  static Certificate semipositive(Vector x, double margin, std::string method) {
    Certificate c;
    c.verdict = Verdict::Semipositive;
    c.primal = std::move(x);
    c.margin = margin;
    c.method = std::move(method);
    return c;
  }

  static Certificate not_semipositive(Vector y, double margin, std::string method) {
    Certificate c;
    c.verdict = Verdict::NotSemipositive;
    c.dual = std::move(y);
    c.margin = margin;
    c.method = std::move(method);
    return c;
  }

  static Certificate no_verdict(std::string method, double margin = 0.0) {
    Certificate c;
    c.verdict = Verdict::NoVerdict;
    c.margin = margin;
    c.method = std::move(method);
    return c;
  }
};

} // namespace lorentz
