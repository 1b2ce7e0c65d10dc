#pragma once

// The subvariety lattice of M_lambda(bta+b+) drawn as a cover graph whose
// edges carry an identity of the lower monoid violated by the upper one.

#include <optional>
#include <string>
#include <vector>

#include "dpm/identity.hpp"

namespace dpm {

  struct LatticeNode {
    std::string name;  // display name
    std::string expr;  // monoid expression
  };

  struct LatticeEdge {
    std::size_t             lower;
    std::size_t             upper;
    std::optional<Identity> separator;
  };

  struct Lattice {
    std::vector<LatticeNode> nodes;
    std::vector<LatticeEdge> edges;
  };

  std::vector<LatticeNode>                  lattice_nodes();
  std::vector<std::pair<std::size_t, std::size_t>> lattice_covers();
  std::vector<Identity>                     separator_candidates();

  // Picks for every cover the first candidate satisfied by the lower
  // monoid and violated by the upper one.
  Lattice build_lattice();

  std::string to_dot(Lattice const& l);

}  // namespace dpm
