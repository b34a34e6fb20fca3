#include "mhad/designs.hpp"

#include <numeric>
#include <set>
#include <sstream>

#include "mhad/error.hpp"
#include "mhad/number_theory.hpp"

namespace mhad {

BinaryMatrix::BinaryMatrix(std::size_t order) : bits_(order) {
  if (order == 0) throw Error(ErrorCode::InvalidArgument, "binary matrix order must be >= 1");
}

BinaryMatrix BinaryMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
  BinaryMatrix d(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows.size()) throw Error(ErrorCode::DimensionMismatch, "binary matrix rows must be square");
    for (std::size_t c = 0; c < rows.size(); ++c) {
      if (rows[r][c] != 0 && rows[r][c] != 1) throw Error(ErrorCode::InvalidArgument, "binary matrix entries must be 0 or 1");
      d.set(r, c, rows[r][c] == 1);
    }
  }
  return d;
}

BinaryMatrix BinaryMatrix::all_ones(std::size_t order) {
  BinaryMatrix d(order);
  d.bits_.fill(true);
  return d;
}

BinaryMatrix BinaryMatrix::identity(std::size_t order) {
  BinaryMatrix d(order);
  for (std::size_t i = 0; i < order; ++i) d.set(i, i, true);
  return d;
}

std::vector<std::size_t> BinaryMatrix::column_sums() const {
  std::vector<std::size_t> sums(order(), 0);
  for (std::size_t r = 0; r < order(); ++r) {
    const auto words = bits_.row(r);
    for (std::size_t w = 0; w < words.size(); ++w) {
      for (auto word = words[w]; word != 0; word &= word - 1) {
        ++sums[w * detail::BitGrid::kWordBits + static_cast<std::size_t>(std::countr_zero(word))];
      }
    }
  }
  return sums;
}

std::size_t BinaryMatrix::row_overlap(std::size_t i, std::size_t j) const noexcept {
  return detail::BitGrid::and_popcount(bits_.row(i), bits_.row(j));
}

BinaryMatrix BinaryMatrix::transposed() const {
  BinaryMatrix t(order());
  for (std::size_t r = 0; r < order(); ++r)
    for (std::size_t c = 0; c < order(); ++c)
      if (at(r, c)) t.set(c, r, true);
  return t;
}

BinaryMatrix BinaryMatrix::complemented() const {
  BinaryMatrix out = *this;
  out.bits_.complement();
  return out;
}

DesignParams::DesignParams(std::int64_t v, std::int64_t k, std::int64_t lambda, std::int64_t m) : v_(v), m_(m) {
  if (m < 2) throw Error(ErrorCode::InvalidArgument, "design modulus must be >= 2");
  if (v < 2) throw Error(ErrorCode::InvalidArgument, "design order must be >= 2");
  k_ = mod(k, m);
  lambda_ = mod(lambda, m);
}

std::string DesignParams::to_string() const {
  std::ostringstream os;
  os << '(' << v_ << ',' << k_ << ',' << lambda_ << ';' << m_ << ')';
  return os.str();
}

bool verify_design(const BinaryMatrix& d, const DesignParams& p) {
  if (static_cast<std::int64_t>(d.order()) != p.v())
    throw Error(ErrorCode::DimensionMismatch, "design order " + std::to_string(d.order()) + " does not match v=" +
                                                  std::to_string(p.v()));
  const std::int64_t m = p.m();
  const std::size_t v = d.order();
  for (std::size_t r = 0; r < v; ++r)
    if (mod(static_cast<std::int64_t>(d.row_sum(r)), m) != p.k()) return false;
  for (std::size_t s : d.column_sums())
    if (mod(static_cast<std::int64_t>(s), m) != p.k()) return false;
  for (std::size_t i = 0; i < v; ++i)
    for (std::size_t j = i + 1; j < v; ++j)
      if (mod(static_cast<std::int64_t>(d.row_overlap(i, j)), m) != p.lambda()) return false;
  return true;
}

std::optional<DesignParams> infer_params(const BinaryMatrix& d, std::int64_t m) {
  if (m < 2 || d.order() < 2) throw Error(ErrorCode::InvalidArgument, "infer_params needs m >= 2 and order >= 2");
  // Row 0 fixes k and rows 0,1 fix lambda; any valid pair must agree with them.
  DesignParams candidate(static_cast<std::int64_t>(d.order()), static_cast<std::int64_t>(d.row_sum(0)),
                         static_cast<std::int64_t>(d.row_overlap(0, 1)), m);
  if (verify_design(d, candidate)) return candidate;
  return std::nullopt;
}

ModularDesign::ModularDesign(BinaryMatrix matrix, DesignParams params)
    : matrix_(std::move(matrix)), params_(params) {
  if (!verify_design(matrix_, params_))
    throw Error(ErrorCode::NotADesign, "matrix is not a " + params_.to_string() + " design");
}

BinaryMatrix circulant(const std::vector<int>& first_row) {
  if (first_row.empty()) throw Error(ErrorCode::InvalidArgument, "circulant needs a nonempty first row");
  const std::size_t v = first_row.size();
  BinaryMatrix d(v);
  for (std::size_t c = 0; c < v; ++c) {
    if (first_row[c] != 0 && first_row[c] != 1) throw Error(ErrorCode::InvalidArgument, "circulant row must be 0/1");
    if (first_row[c] == 0) continue;
    for (std::size_t r = 0; r < v; ++r) d.set(r, (c + r) % v, true);
  }
  return d;
}

ModularDesign DifferenceSetDesign::reduced(std::int64_t m) const { return ModularDesign(matrix, DesignParams(v, k, lambda, m)); }

DifferenceSetDesign from_difference_set(const DifferenceSetSpec& spec) {
  if (spec.v < 2) throw Error(ErrorCode::InvalidArgument, "difference set group order must be >= 2");
  std::set<std::int64_t> seen;
  for (auto e : spec.elements) {
    if (e < 0 || e >= spec.v) throw Error(ErrorCode::InvalidArgument, "difference set element out of range");
    if (!seen.insert(e).second) throw Error(ErrorCode::InvalidArgument, "difference set elements must be distinct");
  }
  std::vector<std::int64_t> counts(static_cast<std::size_t>(spec.v), 0);
  for (auto a : spec.elements)
    for (auto b : spec.elements)
      if (a != b) ++counts[static_cast<std::size_t>(mod(a - b, spec.v))];
  const std::int64_t lambda = counts[1 % counts.size()];
  for (std::size_t d = 1; d < counts.size(); ++d)
    if (counts[d] != lambda)
      throw Error(ErrorCode::NotADesign, "difference " + std::to_string(d) + " occurs " + std::to_string(counts[d]) +
                                             " times, expected " + std::to_string(lambda));
  std::vector<int> row(static_cast<std::size_t>(spec.v), 0);
  for (auto e : spec.elements) row[static_cast<std::size_t>(e)] = 1;
  return DifferenceSetDesign{circulant(row), spec.v, static_cast<std::int64_t>(spec.elements.size()), lambda};
}

ModularDesign complement(const ModularDesign& d) {
  const auto& p = d.params();
  return ModularDesign(d.matrix().complemented(),
                       DesignParams(p.v(), p.v() - p.k(), p.v() - 2 * p.k() + p.lambda(), p.m()));
}

DesignParams core_design_params(std::int64_t n, std::int64_t m) {
  const std::int64_t phi = euler_phi(m);
  const std::int64_t k = pow_mod(2, phi - 1, m) * mod(n - 2, m);
  const std::int64_t lambda = pow_mod(2, phi - 2, m) * mod(n - 4, m);
  return DesignParams(n - 1, k, lambda, m);
}

ModularDesign core_to_design(const SignMatrix& h, std::int64_t m) {
  const auto n = static_cast<std::int64_t>(h.order());
  if (m < 3) throw Error(ErrorCode::InvalidArgument, "core_to_design needs m >= 3");
  if (m % 2 == 0) throw Error(ErrorCode::EvenModulus, "core_to_design needs an odd modulus, got " + std::to_string(m));
  if (n < 3) throw Error(ErrorCode::InvalidArgument, "core_to_design needs order >= 3");
  if (std::gcd(m, n) != 1)
    throw Error(ErrorCode::NotCoprime, "core_to_design needs gcd(m, n) = 1, got gcd(" + std::to_string(m) + ", " +
                                           std::to_string(n) + ") = " + std::to_string(std::gcd(m, n)));
  if (!is_normalized(h)) throw Error(ErrorCode::NotNormalized, "core_to_design needs a normalized matrix");
  if (!is_modular_hadamard(h, Modulus(m)))
    throw Error(ErrorCode::NotModularHadamard,
                "core_to_design input is not an MH(" + std::to_string(n) + "," + std::to_string(m) + ")");
  const SignMatrix core = extract_core(h);
  // +1 entries of the core become 1s: flip the sign bits.
  BinaryMatrix d(core.order());
  d.bits() = core.bits();
  d.bits().complement();
  return ModularDesign(std::move(d), core_design_params(n, m));
}

namespace {

bool is_exact_design(const BinaryMatrix& d, std::int64_t v, std::int64_t k, std::int64_t lambda) {
  // Every sum is at most v, so residues mod v+1 are the integers themselves.
  return static_cast<std::int64_t>(d.order()) == v && verify_design(d, DesignParams(v, k, lambda, v + 1));
}

}  // namespace

ModularDesign example_block_26(const ModularDesign& r) {
  if (!is_exact_design(r.matrix(), 13, 4, 1))
    throw Error(ErrorCode::InvalidArgument, "example_block_26 needs a (13,4,1) design");
  constexpr std::size_t v = 13;
  BinaryMatrix j_minus_i = BinaryMatrix::all_ones(v);
  for (std::size_t i = 0; i < v; ++i) j_minus_i.set(i, i, false);
  const BinaryMatrix lower_right = r.matrix().transposed().complemented();
  BinaryMatrix block(2 * v);
  for (std::size_t i = 0; i < v; ++i) {
    block.bits().copy_bits(i, 0, r.matrix().bits(), i, 0, v);
    block.bits().copy_bits(i, v, j_minus_i.bits(), i, 0, v);
    block.bits().copy_bits(v + i, 0, j_minus_i.bits(), i, 0, v);
    block.bits().copy_bits(v + i, v, lower_right.bits(), i, 0, v);
  }
  return ModularDesign(std::move(block), DesignParams(26, 1, 2, 5));
}

std::string to_string(CatalogName name) {
  switch (name) {
    case CatalogName::R13: return "R13";
    case CatalogName::D26: return "D26";
    case CatalogName::D21: return "D21";
    case CatalogName::D16: return "D16";
    case CatalogName::B11: return "B11";
    case CatalogName::B11C: return "B11C";
  }
  return "?";
}

std::vector<CatalogName> catalog_names() {
  return {CatalogName::R13, CatalogName::D26, CatalogName::D21, CatalogName::D16, CatalogName::B11, CatalogName::B11C};
}

std::optional<CatalogName> catalog_name_from_string(const std::string& text) {
  for (auto name : catalog_names())
    if (to_string(name) == text) return name;
  return std::nullopt;
}

std::optional<ExactParams> catalog_exact_params(CatalogName name) {
  switch (name) {
    case CatalogName::R13: return ExactParams{13, 4, 1};
    case CatalogName::D26: return std::nullopt;
    case CatalogName::D21: return ExactParams{21, 5, 1};
    case CatalogName::D16: return ExactParams{16, 6, 2};
    case CatalogName::B11: return ExactParams{11, 5, 2};
    case CatalogName::B11C: return ExactParams{11, 6, 3};
  }
  return std::nullopt;
}

DifferenceSetSpec singer_difference_set_21() { return {21, {3, 6, 7, 12, 14}}; }

namespace {

BinaryMatrix catalog_matrix(CatalogName name) {
  switch (name) {
    case CatalogName::R13:
      return circulant({1, 0, 1, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0});
    case CatalogName::D21:
      return from_difference_set(singer_difference_set_21()).matrix;
    case CatalogName::D16: {
      // (J - H)/2 for the regular Hadamard matrix H = (J-2I)_4 (x) (J-2I)_4.
      const auto j2i = canonical(CanonicalKind::JMinusTwoI, 4);
      const SignMatrix h = kronecker(j2i, j2i);
      BinaryMatrix d(h.order());
      d.bits() = h.bits();
      return d;
    }
    case CatalogName::B11:
      return from_difference_set({11, {1, 3, 4, 5, 9}}).matrix;
    case CatalogName::B11C:
      return catalog_matrix(CatalogName::B11).complemented();
    case CatalogName::D26:
      break;
  }
  throw Error(ErrorCode::UnknownName, "no plain matrix for catalog entry " + to_string(name));
}

}  // namespace

ModularDesign catalog(CatalogName name, std::int64_t m) {
  if (name == CatalogName::D26) {
    if (m != 5) throw Error(ErrorCode::UnsupportedModulus, "D26 is a 5-modular design only");
    return example_block_26(catalog(CatalogName::R13, 5));
  }
  const auto exact = catalog_exact_params(name);
  if (!exact) throw Error(ErrorCode::UnknownName, "unknown catalog entry");
  BinaryMatrix d = catalog_matrix(name);
  if (!is_exact_design(d, exact->v, exact->k, exact->lambda))
    throw Error(ErrorCode::Internal, "catalog entry " + to_string(name) + " failed its exact design check");
  return ModularDesign(std::move(d), DesignParams(exact->v, exact->k, exact->lambda, m));
}

}  // namespace mhad
