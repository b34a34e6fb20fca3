#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mhad/sign_matrix.hpp"

namespace mhad {

enum class SearchMode { FirstWitness, CountAll, ConfirmNone };

std::string to_string(SearchMode mode);
std::optional<SearchMode> search_mode_from_string(const std::string& text);

// Exhaustive enumeration over the 2^((n-1)^2) normalized +-1 matrices of
// order n. Candidates are ordered lexicographically by their free rows (row 1
// first, column 1 most significant, '+' before '-'). The space is split into
// 2^shard_bits shards by the leading bits of the first free row.
struct SearchSpec {
  int n = 0;
  Modulus m;
  SearchMode mode = SearchMode::FirstWitness;
  unsigned threads = 1;
  int shard_bits = -1;                  // -1 picks min(n - 1, 6)
  std::optional<std::uint64_t> shard;   // run only this shard
  std::optional<std::filesystem::path> ledger;  // resumable shard ledger
  // Reject a failing row prefix together with all its completions (exact, not
  // a symmetry reduction). When false every candidate gets a full Gram check.
  bool prefix_rejection = true;
};

struct SearchOutcome {
  std::optional<SignMatrix> witness;  // lexicographically least witness seen
  std::uint64_t examined = 0;         // candidates decided
  std::uint64_t solutions = 0;        // exact count outside FirstWitness mode
  std::uint64_t shards_run = 0;
  std::uint64_t shards_resumed = 0;

  friend bool operator==(const SearchOutcome&, const SearchOutcome&) = default;
};

inline constexpr int kMaxFreeCells = 36;

// 2^((n-1)^2); requires (n-1)^2 <= 36.
std::uint64_t candidate_count(int n);

int effective_shard_bits(const SearchSpec& spec);

SearchOutcome exhaustive(const SearchSpec& spec);

struct CrossCheckEntry {
  int n = 0;
  int m = 0;
  bool solver_exists = false;
  bool search_exists = false;
  std::uint64_t examined = 0;

  bool agrees() const noexcept { return solver_exists == search_exists; }
};

struct CrossCheckReport {
  std::vector<CrossCheckEntry> entries;
  std::size_t disagreements() const;
};

// Compares decide(n, m) with the exhaustive verdict for 1 <= n <= n_max <= 6.
CrossCheckReport cross_check(int n_max, const std::vector<int>& moduli, unsigned threads = 1);

}  // namespace mhad
