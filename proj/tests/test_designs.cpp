#include <algorithm>
#include <map>
#include <numeric>

#include "doctest.h"
#include "mhad/constructions.hpp"
#include "mhad/designs.hpp"
#include "mhad/error.hpp"
#include "mhad/solver.hpp"
#include "test_support.hpp"

using namespace mhad;
using mhad::testing::dense;
using mhad::testing::naive_is_design;

namespace {

const std::vector<int> kR13Row{1, 0, 1, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0};

// Multiplicity of every nonzero difference a - b (mod v), counted directly.
std::map<std::int64_t, int> difference_counts(std::int64_t v, const std::vector<std::int64_t>& s) {
  std::map<std::int64_t, int> counts;
  for (auto a : s)
    for (auto b : s)
      if (a != b) ++counts[((a - b) % v + v) % v];
  return counts;
}

bool all_differences(std::int64_t v, const std::vector<std::int64_t>& s, int times) {
  const auto counts = difference_counts(v, s);
  if (static_cast<std::int64_t>(counts.size()) != v - 1) return false;
  return std::all_of(counts.begin(), counts.end(), [&](const auto& kv) { return kv.second == times; });
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::Internal;
}

}  // namespace

TEST_CASE("verify_design examples") {
  const BinaryMatrix r = circulant(kR13Row);
  CHECK(verify_design(r, DesignParams(13, 4, 1, 5)));
  CHECK(naive_is_design(dense(r), 4, 1, 0));
  CHECK(verify_design(example_block_26(ModularDesign(r, DesignParams(13, 4, 1, 5))).matrix(), DesignParams(26, 1, 2, 5)));
  CHECK(verify_design(BinaryMatrix::all_ones(5), DesignParams(5, 0, 0, 5)));
  CHECK_FALSE(verify_design(r, DesignParams(13, 4, 2, 5)));
  CHECK_THROWS_AS(verify_design(r, DesignParams(12, 4, 1, 5)), Error);
}

TEST_CASE("DesignParams validation and reduction") {
  const DesignParams p(26, 16, 7, 5);
  CHECK(p.k() == 1);
  CHECK(p.lambda() == 2);
  CHECK(p.to_string() == "(26,1,2;5)");
  CHECK(DesignParams(4, -1, -4, 3).k() == 2);
  CHECK(code_of([] { DesignParams(1, 1, 1, 5); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { DesignParams(5, 1, 1, 1); }) == ErrorCode::InvalidArgument);
  CHECK_THROWS_AS(ModularDesign(BinaryMatrix(1), DesignParams(2, 0, 0, 2)), Error);
}

TEST_CASE("infer_params examples") {
  const auto p = infer_params(circulant(kR13Row), 5);
  REQUIRE(p);
  CHECK(*p == DesignParams(13, 4, 1, 5));
  const auto q = infer_params(BinaryMatrix::all_ones(4), 3);
  REQUIRE(q);
  CHECK(*q == DesignParams(4, 1, 1, 3));
  BinaryMatrix uneven(3);
  uneven.set(0, 0, true);
  CHECK_FALSE(infer_params(uneven, 5));
}

TEST_CASE("infer_params agrees with an exhaustive scan of all (k, lambda)") {
  std::mt19937_64 rng(77);
  std::vector<BinaryMatrix> pool;
  for (int i = 0; i < 150; ++i) pool.push_back(testing::random_binary_matrix(2 + rng() % 5, rng));
  for (std::size_t v = 2; v <= 7; ++v) {
    pool.push_back(BinaryMatrix::identity(v));
    pool.push_back(BinaryMatrix::all_ones(v));
    pool.push_back(BinaryMatrix(v));
    pool.push_back(BinaryMatrix::identity(v).complemented());
  }
  pool.push_back(circulant(kR13Row));
  int found = 0;
  for (const auto& d : pool) {
    for (std::int64_t m = 2; m <= 7; ++m) {
      const auto v = static_cast<std::int64_t>(d.order());
      std::vector<DesignParams> matches;
      for (std::int64_t k = 0; k < m; ++k)
        for (std::int64_t l = 0; l < m; ++l)
          if (naive_is_design(dense(d), k, l, m)) matches.emplace_back(v, k, l, m);
      const auto inferred = infer_params(d, m);
      if (matches.empty()) {
        CHECK_FALSE(inferred);
      } else {
        ++found;
        REQUIRE(inferred);
        CHECK(verify_design(d, *inferred));
        CHECK(std::find(matches.begin(), matches.end(), *inferred) != matches.end());
      }
    }
  }
  CHECK(found > 0);
}

TEST_CASE("verify_design agrees with the dense oracle and is permutation invariant") {
  std::mt19937_64 rng(31);
  std::vector<BinaryMatrix> designs{circulant(kR13Row), catalog(CatalogName::B11).matrix(),
                                    catalog(CatalogName::D16).matrix(), catalog(CatalogName::D21).matrix()};
  for (int i = 0; i < 40; ++i) designs.push_back(testing::random_binary_matrix(2 + rng() % 6, rng));
  for (const auto& d : designs) {
    std::vector<std::size_t> perm(d.order());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const BinaryMatrix p = testing::permuted(d, perm);
    for (std::int64_t m = 2; m <= 6; ++m) {
      for (std::int64_t k = 0; k < m; ++k)
        for (std::int64_t l = 0; l < m; ++l) {
          const DesignParams params(static_cast<std::int64_t>(d.order()), k, l, m);
          const bool expected = naive_is_design(dense(d), k, l, m);
          CHECK(verify_design(d, params) == expected);
          CHECK(verify_design(p, params) == expected);
        }
    }
  }
}

TEST_CASE("circulant") {
  const BinaryMatrix r = circulant(kR13Row);
  CHECK(r.order() == 13);
  for (std::size_t i = 0; i < 13; ++i)
    for (std::size_t j = 0; j < 13; ++j) CHECK(r.at(i, j) == (kR13Row[(j + 13 - i) % 13] == 1));
  CHECK(circulant({1}) == BinaryMatrix::all_ones(1));
  const BinaryMatrix p = circulant({1, 0, 0});
  for (std::size_t i = 0; i < 3; ++i) CHECK(p.row_sum(i) == 1);
}

TEST_CASE("difference sets") {
  SUBCASE("{0,2,3,7} mod 13") {
    CHECK(all_differences(13, {0, 2, 3, 7}, 1));
    const auto d = from_difference_set({13, {0, 2, 3, 7}});
    CHECK(d.k == 4);
    CHECK(d.lambda == 1);
    CHECK(verify_design(d.matrix, DesignParams(13, 4, 1, 7)));
  }
  SUBCASE("quadratic residues mod 11 hit every difference twice") {
    CHECK(all_differences(11, {1, 3, 4, 5, 9}, 2));
    const auto d = from_difference_set({11, {1, 3, 4, 5, 9}});
    CHECK(d.v == 11);
    CHECK(d.k == 5);
    CHECK(d.lambda == 2);
    CHECK(naive_is_design(dense(d.matrix), 5, 2, 0));
  }
  SUBCASE("the order-21 Singer set is one of the planar sets found by brute force") {
    const auto singer = singer_difference_set_21();
    CHECK(singer.v == 21);
    CHECK(singer.elements == std::vector<std::int64_t>{3, 6, 7, 12, 14});
    int planar = 0;
    bool seen = false;
    std::vector<std::int64_t> s(5);
    for (s[0] = 0; s[0] < 21; ++s[0])
      for (s[1] = s[0] + 1; s[1] < 21; ++s[1])
        for (s[2] = s[1] + 1; s[2] < 21; ++s[2])
          for (s[3] = s[2] + 1; s[3] < 21; ++s[3])
            for (s[4] = s[3] + 1; s[4] < 21; ++s[4])
              if (all_differences(21, s, 1)) {
                ++planar;
                seen = seen || s == singer.elements;
              }
    CHECK(planar > 0);
    CHECK(seen);
    const auto d = from_difference_set(singer);
    CHECK(naive_is_design(dense(d.matrix), 5, 1, 0));
  }
  SUBCASE("row and column sums are exactly |S|") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 200; ++trial) {
      const std::int64_t v = 2 + static_cast<std::int64_t>(rng() % 15);
      std::vector<std::int64_t> s;
      for (std::int64_t x = 0; x < v; ++x)
        if (rng() & 1) s.push_back(x);
      if (s.size() < 2) continue;
      if (!all_differences(v, s, static_cast<int>(difference_counts(v, s).begin()->second))) {
        CHECK_THROWS_AS(from_difference_set({v, s}), Error);
        continue;
      }
      const auto d = from_difference_set({v, s});
      for (std::size_t i = 0; i < d.matrix.order(); ++i) CHECK(d.matrix.row_sum(i) == s.size());
      for (auto c : d.matrix.column_sums()) CHECK(c == s.size());
    }
  }
  SUBCASE("malformed specs") {
    CHECK_THROWS_AS(from_difference_set({7, {1, 2, 4, 4}}), Error);
    CHECK_THROWS_AS(from_difference_set({7, {1, 9}}), Error);
    CHECK(code_of([] { from_difference_set({7, {0, 1}}); }) == ErrorCode::NotADesign);
  }
}

TEST_CASE("complement") {
  const ModularDesign b11 = from_difference_set({11, {1, 3, 4, 5, 9}}).reduced(7);
  const ModularDesign c = complement(b11);
  CHECK(c.params() == DesignParams(11, 6, 3, 7));
  CHECK(naive_is_design(dense(c.matrix()), 6, 3, 0));
  CHECK(complement(c) == b11);

  const ModularDesign r13(circulant(kR13Row), DesignParams(13, 4, 1, 11));
  CHECK(complement(r13).params() == DesignParams(13, 9, 6, 11));
  CHECK(naive_is_design(dense(complement(r13).matrix()), 9, 6, 0));
  CHECK(complement(complement(r13)) == r13);
}

TEST_CASE("core_to_design") {
  const auto mh21 = normalize(two_design_hadamard(catalog(CatalogName::D21, 5)));
  const auto d20 = core_to_design(mh21, 5);
  CHECK(d20.params() == DesignParams(20, 2, 3, 5));
  CHECK(naive_is_design(dense(d20.matrix()), 2, 3, 5));

  // Core sums of a normalized MH(21,5) are -1 (mod 5) in every row and column.
  const SignMatrix core = extract_core(mh21);
  for (std::size_t i = 0; i < 20; ++i) {
    std::int64_t row = 0, col = 0;
    for (std::size_t j = 0; j < 20; ++j) {
      row += core.at(i, j);
      col += core.at(j, i);
    }
    CHECK(testing::residue(row + 1, 5) == 0);
    CHECK(testing::residue(col + 1, 5) == 0);
  }

  const auto f2 = canonical(CanonicalKind::F2);
  const auto mh16 = normalize(kronecker(f2, kronecker(f2, canonical(CanonicalKind::JMinusTwoI, 4))));
  CHECK(core_to_design(mh16, 5).params() == DesignParams(15, 2, 3, 5));

  const auto mh51 = normalize(materialize(decide(51, 5).recipe(), 5));
  const auto d50 = core_to_design(mh51, 5);
  CHECK(d50.params() == DesignParams(50, 2, 3, 5));
  CHECK(naive_is_design(dense(d50.matrix()), 2, 3, 5));

  CHECK(core_design_params(21, 5) == DesignParams(20, 2, 3, 5));
  CHECK(core_design_params(9, 7) == DesignParams(8, 32 * 7, 16 * 5, 7));

  CHECK(code_of([&] { core_to_design(mh21, 2); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { core_to_design(mh21, 4); }) == ErrorCode::EvenModulus);
  CHECK(code_of([&] { core_to_design(canonical(CanonicalKind::AllOnes, 5), 5); }) == ErrorCode::NotCoprime);
  CHECK(code_of([&] { core_to_design(two_design_hadamard(catalog(CatalogName::D21, 5)), 5); }) ==
        ErrorCode::NotNormalized);
  CHECK(code_of([&] { core_to_design(canonical(CanonicalKind::AllOnes, 7), 5); }) == ErrorCode::NotModularHadamard);
}

TEST_CASE("core_to_design parameters follow the closed form for every core the solver builds") {
  for (std::int64_t n = 3; n <= 240; ++n) {
    if (n % 5 == 0) continue;
    const auto cert = decide(n, 5);
    if (!cert.exists()) continue;
    const auto h = normalize(materialize(cert.recipe(), 5));
    const auto d = core_to_design(h, 5);
    CHECK(d.params() == core_design_params(n, 5));
    CHECK(d.params().k() == testing::residue(8 * (n - 2), 5));
    CHECK(d.params().lambda() == testing::residue(4 * (n - 4), 5));
  }
}

TEST_CASE("example_block_26") {
  const ModularDesign r(circulant(kR13Row), DesignParams(13, 4, 1, 5));
  const ModularDesign d = example_block_26(r);
  CHECK(d.params() == DesignParams(26, 1, 2, 5));
  CHECK(naive_is_design(dense(d.matrix()), 1, 2, 5));
  for (std::size_t i = 0; i < 13; ++i) CHECK(d.matrix().row_sum(i) == 16);
  CHECK(is_modular_hadamard(two_design_hadamard(d), Modulus(5)));
  CHECK_THROWS_AS(example_block_26(ModularDesign(BinaryMatrix::all_ones(13), DesignParams(13, 13, 13, 5))), Error);
}

TEST_CASE("catalog") {
  CHECK(catalog(CatalogName::R13).params() == DesignParams(13, 4, 1, 5));
  CHECK(catalog(CatalogName::D26).params() == DesignParams(26, 1, 2, 5));
  CHECK(catalog(CatalogName::D21).params() == DesignParams(21, 5, 1, 5));
  CHECK(catalog(CatalogName::B11).params() == DesignParams(11, 5, 2, 5));
  CHECK(catalog(CatalogName::B11C) == complement(catalog(CatalogName::B11)));
  CHECK(code_of([] { catalog(CatalogName::D26, 3); }) == ErrorCode::UnsupportedModulus);

  for (std::int64_t m = 2; m <= 12; ++m) {
    CHECK(verify_design(catalog(CatalogName::D16, m).matrix(), DesignParams(16, 6, 2, m)));
    for (auto name : catalog_names()) {
      const auto exact = catalog_exact_params(name);
      if (!exact) continue;
      const auto d = catalog(name, m);
      CHECK(d.params() == DesignParams(exact->v, exact->k, exact->lambda, m));
      CHECK(naive_is_design(dense(d.matrix()), exact->k, exact->lambda, 0));
    }
  }
  CHECK(is_modular_hadamard(two_design_hadamard(catalog(CatalogName::D21, 5)), Modulus(5)));

  for (auto name : catalog_names()) CHECK(catalog_name_from_string(to_string(name)) == name);
  CHECK_FALSE(catalog_name_from_string("D99"));
}
