#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mhad::detail {

// Square bit array, one padded run of 64-bit words per row. Padding bits past
// the order are always zero, so whole-word XOR/AND popcounts are exact.
class BitGrid {
public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  BitGrid() = default;
  explicit BitGrid(std::size_t order)
      : order_(order), stride_((order + kWordBits - 1) / kWordBits), words_(order * stride_, 0) {}

  std::size_t order() const noexcept { return order_; }
  std::size_t stride() const noexcept { return stride_; }

  bool get(std::size_t r, std::size_t c) const noexcept {
    return (words_[r * stride_ + c / kWordBits] >> (c % kWordBits)) & 1u;
  }
  void set(std::size_t r, std::size_t c, bool value) noexcept {
    Word& w = words_[r * stride_ + c / kWordBits];
    const Word bit = Word{1} << (c % kWordBits);
    w = value ? (w | bit) : (w & ~bit);
  }
  void flip(std::size_t r, std::size_t c) noexcept {
    words_[r * stride_ + c / kWordBits] ^= Word{1} << (c % kWordBits);
  }

  std::span<const Word> row(std::size_t r) const noexcept { return {words_.data() + r * stride_, stride_}; }
  std::span<Word> row(std::size_t r) noexcept { return {words_.data() + r * stride_, stride_}; }

  // Mask with ones exactly on the valid columns of the given word.
  Word valid_mask(std::size_t word_index) const noexcept {
    const std::size_t rem = order_ - word_index * kWordBits;
    return rem >= kWordBits ? ~Word{0} : ((Word{1} << rem) - 1);
  }

  void fill(bool value) noexcept {
    for (std::size_t r = 0; r < order_; ++r) {
      auto words = row(r);
      for (std::size_t w = 0; w < stride_; ++w) words[w] = value ? valid_mask(w) : 0;
    }
  }

  // Complement every valid bit of row r.
  void flip_row(std::size_t r) noexcept {
    auto words = row(r);
    for (std::size_t w = 0; w < stride_; ++w) words[w] ^= valid_mask(w);
  }

  void complement() noexcept {
    for (std::size_t r = 0; r < order_; ++r) flip_row(r);
  }

  // XOR `mask` (a row-shaped word run) into row r.
  void xor_row(std::size_t r, std::span<const Word> mask) noexcept {
    auto words = row(r);
    for (std::size_t w = 0; w < stride_; ++w) words[w] ^= mask[w];
  }

  std::size_t row_popcount(std::size_t r) const noexcept {
    std::size_t total = 0;
    for (Word w : row(r)) total += static_cast<std::size_t>(std::popcount(w));
    return total;
  }

  static std::size_t xor_popcount(std::span<const Word> a, std::span<const Word> b) noexcept {
    std::size_t total = 0;
    for (std::size_t w = 0; w < a.size(); ++w) total += static_cast<std::size_t>(std::popcount(a[w] ^ b[w]));
    return total;
  }
  static std::size_t and_popcount(std::span<const Word> a, std::span<const Word> b) noexcept {
    std::size_t total = 0;
    for (std::size_t w = 0; w < a.size(); ++w) total += static_cast<std::size_t>(std::popcount(a[w] & b[w]));
    return total;
  }

  // Copy `len` bits from src row (starting at column src_col) into row r at dst_col.
  void copy_bits(std::size_t r, std::size_t dst_col, const BitGrid& src, std::size_t src_row, std::size_t src_col,
                 std::size_t len) noexcept;
  void set_range(std::size_t r, std::size_t begin, std::size_t len, bool value) noexcept;

  friend bool operator==(const BitGrid&, const BitGrid&) = default;

private:
  std::size_t order_ = 0;
  std::size_t stride_ = 0;
  std::vector<Word> words_;
};

}  // namespace mhad::detail
