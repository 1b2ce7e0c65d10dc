#pragma once

#include <optional>
#include <span>
#include <vector>

#include "dpm/monoid.hpp"

namespace dpm {

  // map[a] is the image in n of element a of m.
  using MonoidMap = std::vector<Elem>;

  // Bijective, multiplication-preserving, identity to identity and zero to
  // zero when both have one.
  bool is_isomorphism(FiniteMonoid const& m, FiniteMonoid const& n, MonoidMap const& map);

  // Extends gens[i] -> images[i] to a homomorphism from the submonoid of m
  // generated by gens; nullopt if the assignment is inconsistent. Elements
  // outside that submonoid are left mapped to n.size().
  std::optional<MonoidMap> extend_generator_map(FiniteMonoid const&   m,
                                                FiniteMonoid const&   n,
                                                std::span<Elem const> gens,
                                                std::span<Elem const> images);

  // Backtracking over images of a generating set of m, restricted to
  // elements of n with the same invariant profile. Complete: returns an
  // isomorphism whenever one exists.
  std::optional<MonoidMap> find_isomorphism(FiniteMonoid const& m, FiniteMonoid const& n);

  // A small generating set found greedily (elements not in the submonoid
  // generated by the previous ones, scanning J-maximal elements first).
  std::vector<Elem> generating_set(FiniteMonoid const& m);

}  // namespace dpm
