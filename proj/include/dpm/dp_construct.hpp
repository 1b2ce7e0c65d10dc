#pragma once

// Factor order on tau-words, lower sets, and the Rees quotient monoids
// M_tau(W) (M(W) for the trivial congruence).

#include <span>
#include <vector>

#include "dpm/monoid.hpp"
#include "dpm/tau.hpp"

namespace dpm {

  class TauWordSet {
   public:
    explicit TauWordSet(Tau tau) : tau_(tau) {}
    // Canonicalizes every word; duplicates collapse.
    TauWordSet(Tau tau, std::span<Word const> words);

    void insert(TauWord const& u);

    Tau tau() const noexcept {
      return tau_;
    }
    // Sorted by display_less of the canonical words.
    std::vector<TauWord> const& words() const noexcept {
      return words_;
    }
    bool empty() const noexcept {
      return words_.empty();
    }

   private:
    Tau                  tau_;
    std::vector<TauWord> words_;
  };

  // v <=_tau u iff u = p o v o s for some tau-words p, s. Throws on
  // mismatched congruences.
  bool leq_tau(TauWord const& v, TauWord const& u);

  // {v : v <=_tau w for some w in W}, sorted by display_less (so 1 first).
  std::vector<TauWord> lower_set(TauWordSet const& w);

  // Elements: the lower set (identity 1 first) followed by a distinct zero;
  // products leaving the lower set are 0. For empty W the result is the
  // one-element monoid.
  FiniteMonoid build_monoid(TauWordSet const& w);

  // Label used for a tau-word in built monoids (no whitespace).
  std::string element_label(TauWord const& u);

}  // namespace dpm
