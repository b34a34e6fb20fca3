#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mhad/bit_grid.hpp"

namespace mhad {

// Modulus of the Gram congruence. Zero means exact integer arithmetic (a real
// Hadamard matrix); otherwise the value is at least 2.
class Modulus {
public:
  constexpr Modulus() = default;
  explicit Modulus(std::int64_t value);

  static constexpr Modulus exact() { return Modulus(); }

  constexpr std::int64_t value() const noexcept { return value_; }
  constexpr bool is_exact() const noexcept { return value_ == 0; }

  // Canonical residue in [0, m), or the integer itself when exact.
  constexpr std::int64_t reduce(std::int64_t x) const noexcept {
    if (value_ == 0) return x;
    const std::int64_t r = x % value_;
    return r < 0 ? r + value_ : r;
  }

  friend constexpr bool operator==(Modulus, Modulus) = default;

private:
  std::int64_t value_ = 0;
};

// Square matrix over {+1, -1}. Rows are bit-packed with a set bit meaning -1,
// so the inner product of two rows is n - 2 * popcount(a xor b).
class SignMatrix {
public:
  // All-ones matrix of the given order (order >= 1).
  explicit SignMatrix(std::size_t order);

  static SignMatrix from_rows(const std::vector<std::vector<int>>& rows);

  std::size_t order() const noexcept { return bits_.order(); }

  int at(std::size_t r, std::size_t c) const noexcept { return bits_.get(r, c) ? -1 : 1; }
  bool is_negative(std::size_t r, std::size_t c) const noexcept { return bits_.get(r, c); }
  void set(std::size_t r, std::size_t c, int value);
  void negate_row(std::size_t r) noexcept { bits_.flip_row(r); }
  void negate_column(std::size_t c) noexcept;
  void negate() noexcept { bits_.complement(); }

  // Integer inner product of rows i and j.
  std::int64_t row_dot(std::size_t i, std::size_t j) const noexcept;

  const detail::BitGrid& bits() const noexcept { return bits_; }
  detail::BitGrid& bits() noexcept { return bits_; }

  friend bool operator==(const SignMatrix&, const SignMatrix&) = default;

private:
  detail::BitGrid bits_;
};

// Off-diagonal entries of HH^T reduced mod m (exact integers for m = 0).
// The diagonal is omitted: it is exactly n for every sign matrix.
struct GramResidues {
  std::size_t order = 0;
  std::vector<std::int64_t> offdiag;  // row-major n*n, diagonal slots hold 0

  std::int64_t at(std::size_t i, std::size_t j) const { return offdiag[i * order + j]; }
};

GramResidues gram_offdiag(const SignMatrix& h, Modulus m);

// First pair (i < j) whose row inner product is nonzero mod m, if any.
struct GramViolation {
  std::size_t row_a = 0;
  std::size_t row_b = 0;
  std::int64_t dot = 0;  // exact integer inner product
};
std::optional<GramViolation> first_violation(const SignMatrix& h, Modulus m);

bool is_modular_hadamard(const SignMatrix& h, Modulus m);

bool is_normalized(const SignMatrix& h) noexcept;

// Negate columns whose first entry is -1, then rows whose first entry is -1.
SignMatrix normalize(const SignMatrix& h);

// Lower-right (n-1)x(n-1) block of a normalized matrix of order >= 2.
SignMatrix extract_core(const SignMatrix& h);

SignMatrix kronecker(const SignMatrix& a, const SignMatrix& b);

// gcd(m1*m2, m1*n2, m2*n1) with gcd(0, x) = x. The result is a plain integer:
// 0 means the product is exactly Hadamard and 1 means no congruence survives.
std::int64_t combined_modulus(Modulus m1, std::int64_t n1, Modulus m2, std::int64_t n2);

enum class CanonicalKind { AllOnes, JMinusTwoI, F2, F1, H12 };

std::string to_string(CanonicalKind kind);

SignMatrix canonical(CanonicalKind kind, std::size_t n = 0);

}  // namespace mhad
