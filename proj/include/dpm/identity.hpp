#pragma once

// Formal identities u = v and exhaustive satisfaction in finite monoids.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dpm/monoid.hpp"
#include "dpm/word.hpp"

namespace dpm {

  struct Identity {
    Word lhs;
    Word rhs;

    friend bool operator==(Identity const&, Identity const&) = default;
  };

  // "u = v" ("≈" is accepted for "="). Both sides must be plain.
  Identity parse_identity(std::string_view text);
  // "u1 = u2 = ... = uk" as the identities u1 = u2, u2 = u3, ...
  std::vector<Identity> parse_identity_chain(std::string_view text);
  // One chain per line; '#' starts a comment.
  std::vector<Identity> parse_identity_lines(std::string_view text);

  std::string to_string(Identity const& id);

  // Letters of the identity in order of first occurrence, lhs then rhs.
  std::vector<Symbol> letters(Identity const& id);

  Identity long_identity(unsigned n);

  struct Substitution {
    std::vector<std::pair<Symbol, Elem>> values;

    std::optional<Elem> operator[](Symbol x) const;
  };

  std::string to_string(Substitution const& s, FiniteMonoid const& m);

  // Value of w under s; letters of w missing from s are an error.
  Elem evaluate(FiniteMonoid const& m, Word const& w, Substitution const& s);

  class BudgetExceeded : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  struct SatisfactionOptions {
    std::uint64_t budget  = 4'000'000'000ULL;  // substitutions
    unsigned      threads = 1;
  };

  struct SatisfactionResult {
    bool                        holds = true;
    std::optional<Substitution> witness;  // lexicographically first violation
    Elem                        lhs_value = 0;
    Elem                        rhs_value = 0;
    std::uint64_t               substitutions = 0;  // size of the search space
    bool                        parallel = false;
  };

  // |M|^k for k letters, saturating at UINT64_MAX.
  std::uint64_t satisfaction_cost(FiniteMonoid const& m, Identity const& id);

  // Scans substitutions in lexicographic order of (value of first letter,
  // value of second letter, ...), letters ordered as in letters(id). With
  // threads > 1 the space is split by the first letters' values; the
  // reported witness is still the lexicographically first. Throws
  // BudgetExceeded when the cost exceeds the budget.
  SatisfactionResult satisfies(FiniteMonoid const&        m,
                               Identity const&            id,
                               SatisfactionOptions const& opts = {});

  std::vector<SatisfactionResult> satisfies_all(FiniteMonoid const&          m,
                                                std::vector<Identity> const& ids,
                                                SatisfactionOptions const&   opts = {});

  // First substitution (same order) with lhs value a and rhs value b.
  std::optional<Substitution> find_substitution_with_values(FiniteMonoid const&        m,
                                                            Identity const&            id,
                                                            Elem                       lhs_value,
                                                            Elem                       rhs_value,
                                                            SatisfactionOptions const& opts = {});

}  // namespace dpm
