#pragma once

// Congruences on the free monoid represented by rewriting to irreducible
// words over plain and plussed letters.

#include <cstddef>
#include <string_view>
#include <vector>

#include "dpm/word.hpp"

namespace dpm {

  enum class Tau { trivial, tau1, gamma, lambda, rho };

  std::string_view to_string(Tau tau) noexcept;
  // Accepts "trivial", "tau1", "gamma", "lambda", "rho".
  Tau parse_tau(std::string_view name);

  // Listing order: a -> a+ (context rule of the congruence), a+a+ -> a+,
  // aa+ -> a+, a+a -> a+.
  enum class Rule { to_plus = 0, plus_plus = 1, plain_plus = 2, plus_plain = 3 };

  struct RuleSite {
    Rule        rule;
    std::size_t position;  // first letter of the redex

    friend bool operator==(RuleSite, RuleSite) = default;
  };

  std::vector<RuleSite> applicable_rules(Word const& w, Tau tau);
  Word                  apply_rule(Word const& w, RuleSite site);

  // Applies the leftmost applicable rule (ties by rule order) until none
  // applies.
  Word rewrite_leftmost(Word w, Tau tau);

  // Irreducible form computed directly: an occurrence is marked iff it is
  // already plussed or has the congruence's context, then every run of two
  // or more occurrences of one base collapses to a single plussed letter.
  // Agrees with rewrite_leftmost. Throws for the trivial congruence on
  // marked input.
  Word normal_form(Word const& w, Tau tau);

  bool is_irreducible(Word const& w, Tau tau);

  class TauWord {
   public:
    TauWord() = default;

    // Canonical representative of the class of w.
    static TauWord canonical(Word const& w, Tau tau);
    // Wraps a word already irreducible under tau; throws otherwise.
    static TauWord from_irreducible(Word w, Tau tau);

    Word const& word() const noexcept {
      return word_;
    }
    Tau tau() const noexcept {
      return tau_;
    }
    std::size_t size() const noexcept {
      return word_.size();
    }
    bool empty() const noexcept {
      return word_.empty();
    }

    friend bool operator==(TauWord const&, TauWord const&) = default;

   private:
    TauWord(Word w, Tau tau) : word_(std::move(w)), tau_(tau) {}

    Word word_;
    Tau  tau_ = Tau::trivial;
  };

  inline TauWord canonical(Word const& w, Tau tau) {
    return TauWord::canonical(w, tau);
  }

  std::string to_string(TauWord const& u);

  // u o v = canonical(uv). Throws on mismatched congruences.
  TauWord compose(TauWord const& u, TauWord const& v);
  TauWord compose(TauWord const& u, Letter c);
  TauWord compose(Letter c, TauWord const& u);

  bool tau_equal(Word const& u, Word const& v, Tau tau);

  // Plain words of length <= max_len in the class of u, sorted by
  // display_less.
  std::vector<Word> class_members(TauWord const& u, std::size_t max_len);

  // Canonical word plus every class member up to the bound.
  struct IslandCheck {
    bool        canonical_limited;
    bool        members_limited;
    std::size_t bound;
    std::size_t members_checked;
  };
  IslandCheck two_island_limited(TauWord const& u, std::size_t member_bound);

}  // namespace dpm

template <>
struct std::hash<dpm::TauWord> {
  std::size_t operator()(dpm::TauWord const& u) const noexcept {
    return std::hash<dpm::Word>{}(u.word()) * 5u + static_cast<std::size_t>(u.tau());
  }
};
