#pragma once

// Claim corpus: parsing, verification and the tab-separated report.

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dpm {

  // One line "id | kind | inputs | expected | provenance | location".
  struct Claim {
    std::string id;
    std::string kind;
    std::string inputs;
    std::string expected;
    std::string provenance;  // PAPER, DERIVED or TRIVIAL, optionally followed by "slow"
    std::string location;
    std::size_t line = 0;

    bool slow() const;
  };

  class CorpusError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  std::vector<std::string> const& claim_kinds();

  std::vector<Claim> parse_corpus(std::string_view text);
  std::vector<Claim> read_corpus(std::string const& path);
  std::string        default_corpus_path();

  // FNV-1a over the corpus bytes, 16 hex digits.
  std::string corpus_hash(std::string_view text);

  enum class Verdict { pass, fail, skipped };
  std::string_view to_string(Verdict v) noexcept;

  struct ClaimResult {
    std::string id;
    Verdict     verdict = Verdict::fail;
    std::string actual;
    std::string expected;
    std::string location;
    double      millis = 0;
  };

  struct VerifyOptions {
    std::string   filter;  // id prefix
    unsigned      jobs             = 1;
    bool          slow             = false;
    std::uint64_t substitution_budget = 4'000'000'000ULL;
    std::uint64_t automaton_budget    = std::uint64_t{1} << 30;
    std::size_t   derive_max_len      = 14;
    std::size_t   derive_max_steps    = 100000;
  };

  struct ClaimReport {
    std::string              hash;
    std::vector<ClaimResult> results;  // sorted by id

    bool        all_passed() const;  // no failures; skipped claims are allowed
    std::size_t count(Verdict v) const;
  };

  // Never stops at a failing claim. Errors raised while evaluating a claim
  // (bad construction, over budget) become fail or skipped results.
  ClaimResult verify_claim(Claim const& c, VerifyOptions const& opts);
  ClaimReport verify_corpus(std::string_view corpus_text, VerifyOptions const& opts);

  void write_report(std::ostream& out, ClaimReport const& r, bool with_timing = true);

}  // namespace dpm
