#include "mhad/bit_grid.hpp"

#include <algorithm>

namespace mhad::detail {

namespace {

using Word = BitGrid::Word;
constexpr std::size_t kBits = BitGrid::kWordBits;

Word low_mask(std::size_t count) { return count >= kBits ? ~Word{0} : ((Word{1} << count) - 1); }

// Up to 64 bits starting at `pos` of a word run; bits past the run read as 0.
Word read_bits(std::span<const Word> words, std::size_t pos, std::size_t count) {
  const std::size_t w = pos / kBits;
  const std::size_t off = pos % kBits;
  Word value = words[w] >> off;
  if (off != 0 && w + 1 < words.size()) value |= words[w + 1] << (kBits - off);
  return value & low_mask(count);
}

void write_bits(std::span<Word> words, std::size_t pos, std::size_t count, Word value) {
  const std::size_t w = pos / kBits;
  const std::size_t off = pos % kBits;
  const Word mask = low_mask(count);
  value &= mask;
  words[w] = (words[w] & ~(mask << off)) | (value << off);
  if (off != 0 && off + count > kBits) {
    const std::size_t spill = off + count - kBits;
    const Word hi_mask = low_mask(spill);
    words[w + 1] = (words[w + 1] & ~hi_mask) | (value >> (kBits - off));
  }
}

}  // namespace

void BitGrid::copy_bits(std::size_t r, std::size_t dst_col, const BitGrid& src, std::size_t src_row,
                        std::size_t src_col, std::size_t len) noexcept {
  auto dst = row(r);
  const auto from = src.row(src_row);
  for (std::size_t done = 0; done < len;) {
    const std::size_t chunk = std::min(kBits, len - done);
    write_bits(dst, dst_col + done, chunk, read_bits(from, src_col + done, chunk));
    done += chunk;
  }
}

void BitGrid::set_range(std::size_t r, std::size_t begin, std::size_t len, bool value) noexcept {
  auto dst = row(r);
  for (std::size_t done = 0; done < len;) {
    const std::size_t chunk = std::min(kBits, len - done);
    write_bits(dst, begin + done, chunk, value ? ~Word{0} : Word{0});
    done += chunk;
  }
}

}  // namespace mhad::detail
