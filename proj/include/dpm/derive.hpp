#pragma once

// Bounded equational derivations: chains of substitution-instance
// replacements between two words.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dpm/identity.hpp"

namespace dpm {

  struct DerivationStep {
    Word                               before;
    Word                               after;
    std::size_t                        axiom    = 0;
    bool                               reversed = false;  // rhs instance replaced by lhs
    std::vector<std::pair<Symbol, Word>> substitution;
    std::size_t                        position = 0;
  };

  struct DerivationTrace {
    Word                        start;
    Word                        goal;
    std::vector<DerivationStep> steps;
  };

  struct DeriveOptions {
    std::size_t max_len   = 14;
    std::size_t max_steps = 100000;  // expanded words, both directions together
  };

  // Bidirectional breadth-first search. Letters of the axioms may be sent to
  // any word, including the empty one; a letter occurring only on the
  // replacing side is sent to the empty word. nullopt means nothing was
  // found within the bounds.
  std::optional<DerivationTrace> derive_bounded(std::vector<Identity> const& axioms,
                                                Identity const&              goal,
                                                DeriveOptions const&         opts = {});

  // Re-checks every step from scratch. Returns an empty string when the
  // trace is valid, otherwise a description of the first bad step.
  std::string check_trace(std::vector<Identity> const& axioms, DerivationTrace const& trace);

  DerivationTrace reverse_trace(DerivationTrace const& trace);

  std::string to_string(DerivationTrace const& trace, std::vector<Identity> const& axioms);

}  // namespace dpm
