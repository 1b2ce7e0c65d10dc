#pragma once

// The k-generated relatively free monoid of var(M) realized as evaluation
// vectors, and the isoterm / tau-term decisions built on it.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dpm/identity.hpp"
#include "dpm/monoid.hpp"
#include "dpm/tau.hpp"

namespace dpm {

  inline constexpr std::uint64_t kDefaultAutomatonBudget = std::uint64_t{1} << 30;  // bytes

  // A state is the vector (value of the word under a) over all |M|^k maps a
  // from the letters to M; two words reach the same state iff M satisfies
  // the identity between them.
  class RelFreeAutomaton {
   public:
    using State = std::uint32_t;

    // Throws BudgetExceeded when states * |M|^k bytes would exceed budget.
    RelFreeAutomaton(FiniteMonoid const& m,
                     std::vector<Symbol> letters,
                     std::uint64_t       budget = kDefaultAutomatonBudget);

    std::vector<Symbol> const& letters() const noexcept {
      return letters_;
    }
    std::size_t state_count() const noexcept {
      return arena_.size() / length_;
    }
    std::size_t vector_length() const noexcept {
      return length_;
    }
    State initial() const noexcept {
      return 0;
    }
    State next(State s, std::size_t letter) const {
      return transitions_[s * letters_.size() + letter];
    }
    // Letter index of x, or nullopt if x is not an automaton letter.
    std::optional<std::size_t> letter_index(Symbol x) const;
    // Throws if w uses a letter outside the automaton alphabet.
    State run(Word const& w) const;
    std::span<std::uint8_t const> vector(State s) const {
      return {arena_.data() + s * length_, length_};
    }

   private:
    std::vector<Symbol>        letters_;
    std::size_t                length_ = 1;
    std::vector<std::uint8_t>  arena_;
    std::vector<State>         transitions_;
  };

  struct IsotermReport {
    bool                isoterm = false;
    std::optional<Word> counterexample;  // w' != w with M |= w = w'
    std::size_t         states = 0;
    std::string         note;
  };

  // Decides whether M violates every identity w = w' with w' != w.
  IsotermReport is_isoterm(FiniteMonoid const& m,
                           Word const&         w,
                           std::uint64_t       budget = kDefaultAutomatonBudget);

  enum class TauTermStatus { holds, fails, verified_up_to_bound };

  std::string_view to_string(TauTermStatus s) noexcept;

  struct TauTermVerdict {
    TauTermStatus status = TauTermStatus::holds;
    // M |= first = second, first in the class, second not.
    std::optional<std::pair<Word, Word>> witness;
    bool                                 exact             = false;
    bool                                 fresh_letter_used = false;
    std::size_t                          bound             = 0;
    std::size_t                          states            = 0;
    std::string                          note;
  };

  struct TauTermOptions {
    bool          exact  = true;  // fall back to bounded on budget overflow
    std::size_t   bound  = 10;    // word-length cap for the bounded mode
    std::uint64_t budget = kDefaultAutomatonBudget;
  };

  // u is a tau-term for var(M) iff every identity U = v of M with U in the
  // class of u has v in the class of u.
  TauTermVerdict is_tau_term(FiniteMonoid const& m, TauWord const& u, TauTermOptions const& opts = {});

  // True iff some element has no power equal to the identity, i.e. M
  // satisfies no identity 1 = x^n. In that case no identity of M can have
  // a letter on one side only.
  bool has_non_unit_power(FiniteMonoid const& m);

}  // namespace dpm
