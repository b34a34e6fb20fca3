#include "mhad/sign_matrix.hpp"

#include <bit>
#include <numeric>

#include "mhad/error.hpp"

namespace mhad {

Modulus::Modulus(std::int64_t value) : value_(value) {
  if (value != 0 && value < 2) throw Error(ErrorCode::InvalidArgument, "modulus must be 0 or >= 2, got " + std::to_string(value));
}

SignMatrix::SignMatrix(std::size_t order) : bits_(order) {
  if (order == 0) throw Error(ErrorCode::InvalidArgument, "sign matrix order must be >= 1");
}

SignMatrix SignMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
  SignMatrix h(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows.size()) throw Error(ErrorCode::DimensionMismatch, "sign matrix rows must be square");
    for (std::size_t c = 0; c < rows.size(); ++c) h.set(r, c, rows[r][c]);
  }
  return h;
}

void SignMatrix::set(std::size_t r, std::size_t c, int value) {
  if (value != 1 && value != -1) throw Error(ErrorCode::InvalidArgument, "sign matrix entries must be +1 or -1");
  bits_.set(r, c, value == -1);
}

void SignMatrix::negate_column(std::size_t c) noexcept {
  for (std::size_t r = 0; r < order(); ++r) bits_.flip(r, c);
}

std::int64_t SignMatrix::row_dot(std::size_t i, std::size_t j) const noexcept {
  const auto differing = detail::BitGrid::xor_popcount(bits_.row(i), bits_.row(j));
  return static_cast<std::int64_t>(order()) - 2 * static_cast<std::int64_t>(differing);
}

GramResidues gram_offdiag(const SignMatrix& h, Modulus m) {
  const std::size_t n = h.order();
  GramResidues g{n, std::vector<std::int64_t>(n * n, 0)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::int64_t r = m.reduce(h.row_dot(i, j));
      g.offdiag[i * n + j] = r;
      g.offdiag[j * n + i] = r;
    }
  }
  return g;
}

std::optional<GramViolation> first_violation(const SignMatrix& h, Modulus m) {
  const std::size_t n = h.order();
  // A row pair is fine iff n - 2 * (differing positions) == 0 (mod m); tabulate
  // that once instead of reducing every dot product.
  std::vector<unsigned char> ok(n + 1);
  for (std::size_t p = 0; p <= n; ++p)
    ok[p] = m.reduce(static_cast<std::int64_t>(n) - 2 * static_cast<std::int64_t>(p)) == 0;
  const auto& bits = h.bits();
  const std::size_t stride = bits.stride();
  std::size_t i = 0;
  // Four rows at a time against each later row, so every word of row j is
  // loaded once per block. Pairs inside the block are handled separately.
  for (; i + 4 <= n; i += 4) {
    std::optional<GramViolation> found;
    // Keeps the violation a row-by-row scan would reach first.
    auto note = [&](std::size_t a, std::size_t b) {
      if (!found || found->row_a > a) found = GramViolation{a, b, h.row_dot(a, b)};
    };
    for (std::size_t a = i; a < i + 4; ++a)
      for (std::size_t b = a + 1; b < i + 4; ++b)
        if (!ok[detail::BitGrid::xor_popcount(bits.row(a), bits.row(b))]) note(a, b);
    const auto* r0 = bits.row(i).data();
    const auto* r1 = bits.row(i + 1).data();
    const auto* r2 = bits.row(i + 2).data();
    const auto* r3 = bits.row(i + 3).data();
    for (std::size_t j = i + 4; j < n && !(found && found->row_a == i); ++j) {
      const auto* rj = bits.row(j).data();
      std::size_t c0 = 0, c1 = 0, c2 = 0, c3 = 0;
      for (std::size_t w = 0; w < stride; ++w) {
        const auto x = rj[w];
        c0 += static_cast<std::size_t>(std::popcount(r0[w] ^ x));
        c1 += static_cast<std::size_t>(std::popcount(r1[w] ^ x));
        c2 += static_cast<std::size_t>(std::popcount(r2[w] ^ x));
        c3 += static_cast<std::size_t>(std::popcount(r3[w] ^ x));
      }
      if (ok[c0] && ok[c1] && ok[c2] && ok[c3]) continue;
      const std::size_t counts[4] = {c0, c1, c2, c3};
      for (std::size_t a = 0; a < 4; ++a)
        if (!ok[counts[a]]) note(i + a, j);
    }
    if (found) return found;
  }
  for (; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::size_t differing = detail::BitGrid::xor_popcount(bits.row(i), bits.row(j));
      if (!ok[differing]) return GramViolation{i, j, h.row_dot(i, j)};
    }
  }
  return std::nullopt;
}

bool is_modular_hadamard(const SignMatrix& h, Modulus m) { return !first_violation(h, m).has_value(); }

bool is_normalized(const SignMatrix& h) noexcept {
  for (std::size_t i = 0; i < h.order(); ++i) {
    if (h.is_negative(0, i) || h.is_negative(i, 0)) return false;
  }
  return true;
}

SignMatrix normalize(const SignMatrix& h) {
  SignMatrix out = h;
  const std::size_t n = h.order();
  // Column negations collapse into a single XOR mask applied to every row.
  std::vector<detail::BitGrid::Word> mask(out.bits().row(0).begin(), out.bits().row(0).end());
  for (std::size_t r = 0; r < n; ++r) out.bits().xor_row(r, mask);
  for (std::size_t r = 1; r < n; ++r) {
    if (out.is_negative(r, 0)) out.negate_row(r);
  }
  return out;
}

SignMatrix extract_core(const SignMatrix& h) {
  if (h.order() < 2) throw Error(ErrorCode::InvalidArgument, "core extraction needs order >= 2");
  if (!is_normalized(h)) throw Error(ErrorCode::NotNormalized, "core extraction needs a normalized matrix");
  const std::size_t n = h.order() - 1;
  SignMatrix core(n);
  for (std::size_t r = 0; r < n; ++r) core.bits().copy_bits(r, 0, h.bits(), r + 1, 1, n);
  return core;
}

SignMatrix kronecker(const SignMatrix& a, const SignMatrix& b) {
  const std::size_t na = a.order();
  const std::size_t nb = b.order();
  SignMatrix out(na * nb);
  SignMatrix b_neg = b;
  b_neg.negate();
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t k = 0; k < nb; ++k) {
      const std::size_t r = i * nb + k;
      for (std::size_t j = 0; j < na; ++j) {
        const auto& src = a.is_negative(i, j) ? b_neg.bits() : b.bits();
        out.bits().copy_bits(r, j * nb, src, k, 0, nb);
      }
    }
  }
  return out;
}

std::int64_t combined_modulus(Modulus m1, std::int64_t n1, Modulus m2, std::int64_t n2) {
  if (n1 < 1 || n2 < 1) throw Error(ErrorCode::InvalidArgument, "orders must be >= 1");
  const std::int64_t a = m1.value() * m2.value();
  const std::int64_t b = m1.value() * n2;
  const std::int64_t c = m2.value() * n1;
  return std::gcd(std::gcd(a, b), c);
}

std::string to_string(CanonicalKind kind) {
  switch (kind) {
    case CanonicalKind::AllOnes: return "J";
    case CanonicalKind::JMinusTwoI: return "J-2I";
    case CanonicalKind::F2: return "F2";
    case CanonicalKind::F1: return "F1";
    case CanonicalKind::H12: return "H12";
  }
  return "?";
}

namespace {

// Border of a Jacobsthal circulant: with chi the quadratic character mod 11,
// H = I + [[0, 1^T], [-1, Q]] where Q(i, j) = chi(j - i).
SignMatrix paley_order_12() {
  constexpr int q = 11;
  std::vector<int> chi(q, -1);
  chi[0] = 0;
  for (int x = 1; x < q; ++x) chi[(x * x) % q] = 1;
  SignMatrix h(q + 1);
  for (int i = 1; i <= q; ++i) {
    h.set(static_cast<std::size_t>(i), 0, -1);
    for (int j = 1; j <= q; ++j) {
      const int entry = i == j ? 1 : chi[((j - i) % q + q) % q];
      h.set(static_cast<std::size_t>(i), static_cast<std::size_t>(j), entry);
    }
  }
  return h;
}

}  // namespace

SignMatrix canonical(CanonicalKind kind, std::size_t n) {
  switch (kind) {
    case CanonicalKind::AllOnes:
      return SignMatrix(n);
    case CanonicalKind::JMinusTwoI: {
      SignMatrix h(n);
      for (std::size_t i = 0; i < n; ++i) h.set(i, i, -1);
      return h;
    }
    case CanonicalKind::F2:
      return SignMatrix::from_rows({{1, 1}, {1, -1}});
    case CanonicalKind::F1:
      return SignMatrix(1);
    case CanonicalKind::H12: {
      static const SignMatrix h12 = [] {
        SignMatrix h = paley_order_12();
        if (!is_modular_hadamard(h, Modulus::exact()))
          throw Error(ErrorCode::Internal, "order-12 Paley matrix failed its exact Gram check");
        return h;
      }();
      return h12;
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown canonical matrix kind");
}

}  // namespace mhad
