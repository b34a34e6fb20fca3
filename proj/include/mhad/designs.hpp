#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mhad/bit_grid.hpp"
#include "mhad/sign_matrix.hpp"

namespace mhad {

// Square 0/1 incidence matrix.
class BinaryMatrix {
public:
  explicit BinaryMatrix(std::size_t order);  // all zeros

  static BinaryMatrix from_rows(const std::vector<std::vector<int>>& rows);
  static BinaryMatrix all_ones(std::size_t order);
  static BinaryMatrix identity(std::size_t order);

  std::size_t order() const noexcept { return bits_.order(); }
  bool at(std::size_t r, std::size_t c) const noexcept { return bits_.get(r, c); }
  void set(std::size_t r, std::size_t c, bool value) noexcept { bits_.set(r, c, value); }

  std::size_t row_sum(std::size_t r) const noexcept { return bits_.row_popcount(r); }
  std::vector<std::size_t> column_sums() const;
  // Number of columns where rows i and j both hold a 1.
  std::size_t row_overlap(std::size_t i, std::size_t j) const noexcept;

  BinaryMatrix transposed() const;
  BinaryMatrix complemented() const;

  const detail::BitGrid& bits() const noexcept { return bits_; }
  detail::BitGrid& bits() noexcept { return bits_; }

  friend bool operator==(const BinaryMatrix&, const BinaryMatrix&) = default;

private:
  detail::BitGrid bits_;
};

// (v, k, lambda; m) with k and lambda kept as canonical residues mod m.
class DesignParams {
public:
  DesignParams(std::int64_t v, std::int64_t k, std::int64_t lambda, std::int64_t m);

  std::int64_t v() const noexcept { return v_; }
  std::int64_t k() const noexcept { return k_; }
  std::int64_t lambda() const noexcept { return lambda_; }
  std::int64_t m() const noexcept { return m_; }

  std::string to_string() const;  // "(v,k,lambda;m)"

  friend bool operator==(const DesignParams&, const DesignParams&) = default;

private:
  std::int64_t v_, k_, lambda_, m_;
};

bool verify_design(const BinaryMatrix& d, const DesignParams& p);

std::optional<DesignParams> infer_params(const BinaryMatrix& d, std::int64_t m);

// A 0/1 matrix together with parameters it has been checked against.
class ModularDesign {
public:
  // Throws Error(NotADesign) unless verify_design(matrix, params).
  ModularDesign(BinaryMatrix matrix, DesignParams params);

  const BinaryMatrix& matrix() const noexcept { return matrix_; }
  const DesignParams& params() const noexcept { return params_; }

  friend bool operator==(const ModularDesign&, const ModularDesign&) = default;

private:
  BinaryMatrix matrix_;
  DesignParams params_;
};

// Row i is the first row cyclically shifted right by i.
BinaryMatrix circulant(const std::vector<int>& first_row);

struct DifferenceSetSpec {
  std::int64_t v = 0;
  std::vector<std::int64_t> elements;
};

// Exact (v, k, lambda) data of a cyclic difference set.
struct DifferenceSetDesign {
  BinaryMatrix matrix;
  std::int64_t v, k, lambda;

  ModularDesign reduced(std::int64_t m) const;
};

// Every nonzero residue mod v must occur exactly lambda times as a difference;
// otherwise Error(NotADesign) is thrown.
DifferenceSetDesign from_difference_set(const DifferenceSetSpec& spec);

// J - D with parameters (v, v-k, v-2k+lambda) mod m.
ModularDesign complement(const ModularDesign& d);

// (C + J) / 2 of the core C of a normalized MH(n, m), m odd >= 3, gcd(m, n) = 1.
ModularDesign core_to_design(const SignMatrix& h, std::int64_t m);

// Parameters core_to_design would report for an MH(n, m).
DesignParams core_design_params(std::int64_t n, std::int64_t m);

// [[R, J-I], [J-I, J-R^T]] for a (13,4,1) design R; a (26,1,2;5) design.
ModularDesign example_block_26(const ModularDesign& r);

enum class CatalogName { R13, D26, D21, D16, B11, B11C };

std::string to_string(CatalogName name);
std::optional<CatalogName> catalog_name_from_string(const std::string& text);
std::vector<CatalogName> catalog_names();

struct ExactParams {
  std::int64_t v, k, lambda;
};
// Exact symmetric-design parameters; D26 has none (it is only 5-modular).
std::optional<ExactParams> catalog_exact_params(CatalogName name);

// Catalog design reduced mod m (D26 only supports moduli dividing 5).
ModularDesign catalog(CatalogName name, std::int64_t m = 5);

// Difference set used for D21 (a Singer set for the plane of order 4).
DifferenceSetSpec singer_difference_set_21();

}  // namespace mhad
