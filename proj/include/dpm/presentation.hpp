#pragma once

// Finite monoid presentations with zero.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dpm/monoid.hpp"
#include "dpm/word.hpp"

namespace dpm {

  struct Presentation {
    std::vector<Symbol>                 generators;
    std::vector<std::pair<Word, Word>>  relations;
    std::vector<Word>                   zero_words;
  };

  // "<a,b,c | a^2=a, b^2=b, ab=ca=0, ac=cb=c>". A chain u1=u2=...=uk relates
  // every term to the last one; if any term is 0 every other term is a zero
  // word. The angle brackets are optional.
  Presentation parse_presentation(std::string_view text);

  // Built-in presentations "A", "E", "A0", "S".
  Presentation named_presentation(std::string_view name);
  std::vector<std::string> presentation_names();

  // The monoid presented by p: closure of {1} and the generators. Relations
  // are completed to a confluent shortlex rewriting system first (the
  // declared orientation, longer side to shorter, is what shortlex yields
  // when lengths differ). Every relation and zero word is then checked
  // against the produced table.
  // Throws MonoidError "not closed within cap" or "non-confluent
  // orientation".
  FiniteMonoid from_presentation(Presentation const& p, std::size_t cap = kDefaultMonoidCap);

  // Closure of the generators alone (no empty word).
  FiniteSemigroup semigroup_from_presentation(Presentation const& p,
                                              std::size_t         cap = kDefaultMonoidCap);

}  // namespace dpm
