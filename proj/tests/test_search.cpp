#include <filesystem>
#include <fstream>
#include <set>

#include "doctest.h"
#include "mhad/error.hpp"
#include "mhad/search.hpp"
#include "test_support.hpp"

using namespace mhad;

namespace {

SearchSpec spec_for(int n, std::int64_t m, SearchMode mode) {
  SearchSpec s;
  s.n = n;
  s.m = Modulus(m);
  s.mode = mode;
  return s;
}

// Every normalized matrix of order n, checked with dense arithmetic, in the
// search's lexicographic order (row 1 first, column 1 most significant).
std::vector<SignMatrix> brute_solutions(int n, std::int64_t m) {
  std::vector<SignMatrix> out;
  const int w = n - 1;
  const std::uint64_t total = std::uint64_t{1} << (w * w);
  for (std::uint64_t code = 0; code < total; ++code) {
    SignMatrix h(static_cast<std::size_t>(n));
    for (int cell = 0; cell < w * w; ++cell)
      if ((code >> (w * w - 1 - cell)) & 1u)
        h.set(static_cast<std::size_t>(1 + cell / w), static_cast<std::size_t>(1 + cell % w), -1);
    if (testing::naive_is_mh(testing::dense(h), m)) out.push_back(h);
  }
  return out;
}

std::filesystem::path temp_ledger(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("mhad_test_" + name + ".ledger");
  std::filesystem::remove(p);
  return p;
}

}  // namespace

TEST_CASE("search examples") {
  const auto none65 = exhaustive(spec_for(6, 5, SearchMode::ConfirmNone));
  CHECK(none65.solutions == 0);
  CHECK(none65.examined == 33554432u);
  CHECK_FALSE(none65.witness);

  const auto none53 = exhaustive(spec_for(5, 3, SearchMode::ConfirmNone));
  CHECK(none53.solutions == 0);
  CHECK(none53.examined == 65536u);

  const auto first45 = exhaustive(spec_for(4, 5, SearchMode::FirstWitness));
  REQUIRE(first45.witness);
  CHECK(testing::naive_is_mh(testing::dense(*first45.witness), 5));
  CHECK(is_normalized(*first45.witness));
}

TEST_CASE("counts and least witness match a dense brute force for n <= 4") {
  for (int n = 1; n <= 4; ++n) {
    for (std::int64_t m : {0, 2, 3, 4, 5, 6, 7, 8}) {
      const auto brute = brute_solutions(n, m);
      const auto counted = exhaustive(spec_for(n, m, SearchMode::CountAll));
      CHECK_MESSAGE(counted.solutions == brute.size(), "n=" << n << " m=" << m);
      CHECK(counted.examined == candidate_count(n));
      const auto first = exhaustive(spec_for(n, m, SearchMode::FirstWitness));
      CHECK(first.witness.has_value() == !brute.empty());
      if (!brute.empty()) {
        CHECK(*first.witness == brute.front());
        CHECK(*counted.witness == brute.front());
      }
    }
  }
}

TEST_CASE("prefix rejection and full checking agree") {
  for (int n = 1; n <= 5; ++n) {
    for (std::int64_t m : {0, 2, 3, 4, 5, 6}) {
      for (auto mode : {SearchMode::CountAll, SearchMode::FirstWitness}) {
        auto pruned = spec_for(n, m, mode);
        auto full = pruned;
        full.prefix_rejection = false;
        const auto a = exhaustive(pruned);
        const auto b = exhaustive(full);
        CHECK(a.solutions == b.solutions);
        CHECK(a.witness == b.witness);
        if (mode == SearchMode::CountAll) CHECK(a.examined == b.examined);
      }
    }
  }
}

TEST_CASE("outcomes do not depend on the worker count") {
  for (auto [n, m] : std::vector<std::pair<int, std::int64_t>>{{4, 0}, {5, 5}, {5, 3}, {6, 4}, {6, 5}}) {
    for (auto mode : {SearchMode::FirstWitness, SearchMode::CountAll}) {
      auto base = spec_for(n, m, mode);
      const auto one = exhaustive(base);
      for (unsigned t : {2u, 4u, 8u}) {
        auto s = base;
        s.threads = t;
        CHECK(exhaustive(s) == one);
      }
    }
  }
}

TEST_CASE("shards partition the space") {
  for (int bits : {0, 1, 3, 5}) {
    auto s = spec_for(6, 4, SearchMode::CountAll);
    s.shard_bits = bits;
    const auto whole = exhaustive(s);
    std::uint64_t examined = 0, solutions = 0;
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << bits); ++i) {
      auto part = s;
      part.shard = i;
      const auto r = exhaustive(part);
      examined += r.examined;
      solutions += r.solutions;
    }
    CHECK(examined == candidate_count(6));
    CHECK(examined == whole.examined);
    CHECK(solutions == whole.solutions);
  }
  // Shard boundaries seen by the dense oracle: witnesses fall in exactly one shard.
  const auto brute = brute_solutions(4, 2);
  auto s = spec_for(4, 2, SearchMode::CountAll);
  s.shard_bits = 2;
  std::uint64_t total = 0;
  for (std::uint64_t i = 0; i < 4; ++i) {
    s.shard = i;
    total += exhaustive(s).solutions;
  }
  CHECK(total == brute.size());
}

TEST_CASE("ledger resume") {
  const auto path = temp_ledger("resume");
  auto s = spec_for(6, 3, SearchMode::CountAll);
  s.shard_bits = 3;
  s.ledger = path;
  s.shard = 2;
  const auto part = exhaustive(s);
  CHECK(part.shards_run == 1);

  s.shard.reset();
  const auto resumed = exhaustive(s);
  const auto fresh = exhaustive(spec_for(6, 3, SearchMode::CountAll));
  CHECK(fresh.solutions > 0);
  CHECK(resumed.examined == fresh.examined);
  CHECK(resumed.solutions == fresh.solutions);
  CHECK(resumed.witness == fresh.witness);
  CHECK(resumed.shards_run + resumed.shards_resumed == 8);

  // Shards with solutions are re-run on resume so the witness comes back.
  const auto again = exhaustive(s);
  CHECK(again.solutions == fresh.solutions);
  CHECK(again.witness == fresh.witness);
  CHECK(again.shards_run + again.shards_resumed == 8);

  auto other = s;
  other.m = Modulus(5);
  CHECK_THROWS_AS(exhaustive(other), Error);

  std::ofstream(path, std::ios::app) << "garbage\n";
  CHECK_THROWS_AS(exhaustive(s), Error);
  std::filesystem::remove(path);
}

TEST_CASE("ConfirmNone resumes from a ledger") {
  const auto path = temp_ledger("none");
  auto s = spec_for(5, 3, SearchMode::ConfirmNone);
  s.ledger = path;
  const auto first = exhaustive(s);
  const auto second = exhaustive(s);
  CHECK(first.solutions == 0);
  CHECK(second.examined == 65536u);
  CHECK(second.shards_run == 0);
  CHECK(second.shards_resumed == 16);
  std::filesystem::remove(path);
}

TEST_CASE("search argument errors") {
  CHECK_THROWS_AS(exhaustive(spec_for(8, 5, SearchMode::CountAll)), Error);
  auto s = spec_for(4, 5, SearchMode::CountAll);
  s.shard_bits = 4;
  CHECK_THROWS_AS(exhaustive(s), Error);
  s.shard_bits = 2;
  s.shard = 4;
  CHECK_THROWS_AS(exhaustive(s), Error);
  CHECK(candidate_count(7) == (std::uint64_t{1} << 36));
}

TEST_CASE("cross_check") {
  const auto report = cross_check(6, {2, 3, 4, 5, 6}, 4);
  CHECK(report.entries.size() == 30);
  CHECK(report.disagreements() == 0);
  for (const auto& e : report.entries) {
    if (e.n == 3 && e.m == 4) CHECK_FALSE(e.search_exists);
    if (e.n == 4) CHECK(e.search_exists);
  }
  CHECK_THROWS_AS(cross_check(7, {5}), Error);
}
