#pragma once

// Words over a marked alphabet: plain letters a and plussed letters a+.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dpm {

  // Interned base symbol. Equality and hashing compare the interned id only.
  class Symbol {
   public:
    Symbol() = default;

    static Symbol intern(std::string_view name);

    std::string const& name() const;
    std::uint32_t      id() const noexcept {
      return id_;
    }

    friend bool operator==(Symbol, Symbol) = default;
    friend auto operator<=>(Symbol, Symbol) = default;

   private:
    explicit Symbol(std::uint32_t id) noexcept : id_(id) {}
    std::uint32_t id_ = 0;
  };

  // Orders symbols by name rather than by interning order.
  struct SymbolNameLess {
    bool operator()(Symbol a, Symbol b) const {
      return a.name() < b.name();
    }
  };

  using SymbolSet = std::set<Symbol, SymbolNameLess>;

  struct Letter {
    Symbol base;
    bool   plussed = false;

    static Letter plain(Symbol s) noexcept {
      return {s, false};
    }
    static Letter plus(Symbol s) noexcept {
      return {s, true};
    }

    friend bool operator==(Letter, Letter) = default;
    friend auto operator<=>(Letter, Letter) = default;
  };

  class Word {
   public:
    using value_type     = Letter;
    using const_iterator = std::vector<Letter>::const_iterator;

    Word() = default;
    explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}
    Word(std::initializer_list<Letter> letters) : letters_(letters) {}

    std::size_t size() const noexcept {
      return letters_.size();
    }
    bool empty() const noexcept {
      return letters_.empty();
    }
    Letter const& operator[](std::size_t i) const {
      return letters_[i];
    }
    const_iterator begin() const noexcept {
      return letters_.begin();
    }
    const_iterator end() const noexcept {
      return letters_.end();
    }
    std::vector<Letter> const& letters() const noexcept {
      return letters_;
    }

    Word& operator+=(Word const& other);
    Word& operator+=(Letter l) {
      letters_.push_back(l);
      return *this;
    }
    friend Word operator+(Word lhs, Word const& rhs) {
      lhs += rhs;
      return lhs;
    }
    friend Word operator+(Word lhs, Letter rhs) {
      lhs += rhs;
      return lhs;
    }

    Word reversed() const;
    Word subword(std::size_t pos, std::size_t len) const;
    bool is_plain() const noexcept;

    friend bool operator==(Word const&, Word const&) = default;
    friend auto operator<=>(Word const&, Word const&) = default;

   private:
    std::vector<Letter> letters_;
  };

  // Shortlex on the printed form; independent of symbol interning order.
  bool display_less(Word const& a, Word const& b);

  class ParseError : public std::runtime_error {
   public:
    ParseError(std::string const& what, std::size_t position);
    std::size_t position() const noexcept {
      return position_;
    }

   private:
    std::size_t position_;
  };

  // Text format: single-character bases when the text has no whitespace,
  // whitespace-separated identifiers otherwise. A base may carry a "+"
  // suffix and a "^k" exponent (k >= 1); "(...)^k" repeats a group and the
  // standalone token "1" denotes the empty word.
  Word        parse_word(std::string_view text);
  std::string to_string(Word const& w);
  std::string to_string(Letter l);
  std::string to_string(SymbolSet const& s);

  SymbolSet content(Word const& w);

  // Letters occurring exactly once / at least twice. Rejects marked words.
  std::pair<SymbolSet, SymbolSet> simple_and_multiple(Word const& w);

  std::size_t occurrences(Word const& w, Symbol x);

  // Number of maximal runs of base x; a and a+ count as the same base.
  std::size_t islands(Word const& w, Symbol x);
  bool        is_two_island_limited(Word const& w);

  // Word with every plussed letter replaced by its plain base.
  Word strip_marks(Word const& w);

}  // namespace dpm

template <>
struct std::hash<dpm::Symbol> {
  std::size_t operator()(dpm::Symbol s) const noexcept {
    return std::hash<std::uint32_t>{}(s.id());
  }
};

template <>
struct std::hash<dpm::Letter> {
  std::size_t operator()(dpm::Letter l) const noexcept {
    return std::hash<std::uint32_t>{}(l.base.id() * 2u + (l.plussed ? 1u : 0u));
  }
};

template <>
struct std::hash<dpm::Word> {
  std::size_t operator()(dpm::Word const& w) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto l : w) {
      h ^= std::hash<dpm::Letter>{}(l);
      h *= 0x100000001b3ULL;
    }
    return h;
  }
};
