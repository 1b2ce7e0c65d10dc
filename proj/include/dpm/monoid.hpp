#pragma once

// Finite monoids given by multiplication tables.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dpm {

  using Elem = std::uint32_t;

  class MonoidError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  inline constexpr std::size_t kDefaultMonoidCap = 4096;

  class FiniteMonoid {
   public:
    // Validates ranges, the identity law, zero absorption and
    // associativity (every triple up to 64 elements, a fixed random sample
    // above). Throws MonoidError on violation.
    FiniteMonoid(std::size_t              size,
                 Elem                     identity,
                 std::optional<Elem>      zero,
                 std::vector<Elem>        table,
                 std::vector<std::string> labels);

    std::size_t size() const noexcept {
      return size_;
    }
    Elem identity() const noexcept {
      return identity_;
    }
    std::optional<Elem> zero() const noexcept {
      return zero_;
    }
    Elem operator()(Elem a, Elem b) const noexcept {
      return table_[a * size_ + b];
    }
    std::span<Elem const> table() const noexcept {
      return table_;
    }
    std::string const& label(Elem a) const {
      return labels_.at(a);
    }
    std::vector<std::string> const& labels() const noexcept {
      return labels_;
    }
    std::optional<Elem> find_label(std::string const& label) const;

    friend bool operator==(FiniteMonoid const&, FiniteMonoid const&) = default;

   private:
    std::size_t              size_;
    Elem                     identity_;
    std::optional<Elem>      zero_;
    std::vector<Elem>        table_;
    std::vector<std::string> labels_;
  };

  // Semigroup table without an identity; only used as input to
  // adjoin_identity.
  struct FiniteSemigroup {
    std::size_t              size = 0;
    std::vector<Elem>        table;
    std::vector<std::string> labels;
    std::optional<Elem>      zero;

    Elem operator()(Elem a, Elem b) const noexcept {
      return table[a * size + b];
    }
  };

  FiniteMonoid trivial_monoid();
  // Cyclic group of order n, labels "g^i".
  FiniteMonoid cyclic_group(std::size_t n);

  // Fresh identity "1" at index 0; existing elements keep their order and
  // become ordinary elements.
  FiniteMonoid adjoin_identity(FiniteMonoid const& m);
  FiniteMonoid adjoin_identity(FiniteSemigroup const& s);

  struct JTrivialResult {
    bool                                 j_trivial;
    std::optional<std::pair<Elem, Elem>> violating_pair;
  };
  JTrivialResult is_j_trivial(FiniteMonoid const& m);

  bool              is_aperiodic(FiniteMonoid const& m);
  std::vector<Elem> idempotents(FiniteMonoid const& m);
  bool              idempotents_commute(FiniteMonoid const& m);

  struct Submonoid {
    FiniteMonoid      monoid;
    std::vector<Elem> embedding;  // index in the submonoid -> index in M
  };
  // Closure of {1} and gens; elements in breadth-first discovery order.
  Submonoid submonoid(FiniteMonoid const& m, std::span<Elem const> gens);

  FiniteMonoid dual(FiniteMonoid const& m);
  FiniteMonoid direct_product(FiniteMonoid const& m,
                              FiniteMonoid const& n,
                              std::size_t         cap = kDefaultMonoidCap);

  // Text format:
  //   MONOID <size> identity=<i> zero=<j|none>
  //   <labels separated by spaces>
  //   <size rows of size indices; row = left factor>
  std::string  to_text(FiniteMonoid const& m);
  FiniteMonoid from_text(std::string const& text);
  FiniteMonoid read_monoid_file(std::string const& path);
  void         write_monoid_file(FiniteMonoid const& m, std::string const& path);

}  // namespace dpm
