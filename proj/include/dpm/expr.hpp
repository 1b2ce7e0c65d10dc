#pragma once

// Monoid construction expressions used by the CLI and the claim corpus.
//
//   M(w1, w2, ...)            M(W), trivial congruence; M() is M of the empty set
//   M_tau1(...) M_gamma(...) M_lambda(...) M_rho(...)
//   pres(A) pres(<a,b | ...>) presented monoid (identity adjoined)
//   A1 E1 A01 S1 Abar1        the named presented monoids and dual(A1)
//   dual(e) product(e, f) sub(e; label, label, ...)
//   file(path)                monoid file; a bare token containing '/' or
//                             ending in ".monoid" is read as a file too
//   trivial Z(n)

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "dpm/monoid.hpp"

namespace dpm {

  class ExprError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // Results are cached by normalized expression text; safe to call from
  // several threads.
  std::shared_ptr<FiniteMonoid const> eval_monoid(std::string_view expr);

  // Splits at top-level occurrences of sep (outside (), <> and {}), trimming
  // whitespace.
  std::vector<std::string> split_top_level(std::string_view text, char sep);

  std::string trim(std::string_view s);

}  // namespace dpm
