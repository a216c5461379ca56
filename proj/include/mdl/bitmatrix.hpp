#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mdl {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

inline constexpr std::size_t words_for(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

/// Square matrix of bits stored row-major, one padded word run per row.
class BitMatrix {
public:
  BitMatrix() = default;
  explicit BitMatrix(std::size_t n) : n_(n), words_(words_for(n)), data_(n * words_for(n), 0) {}

  std::size_t size() const noexcept { return n_; }
  std::size_t words_per_row() const noexcept { return words_; }

  bool test(std::size_t r, std::size_t c) const noexcept {
    return (data_[r * words_ + c / kWordBits] >> (c % kWordBits)) & 1U;
  }
  void set(std::size_t r, std::size_t c) noexcept { data_[r * words_ + c / kWordBits] |= Word{1} << (c % kWordBits); }

  std::span<const Word> row(std::size_t r) const noexcept { return {data_.data() + r * words_, words_}; }

  std::size_t row_count(std::size_t r) const noexcept {
    std::size_t total = 0;
    for (Word w : row(r))
      total += static_cast<std::size_t>(std::popcount(w));
    return total;
  }

  BitMatrix transposed() const {
    BitMatrix t(n_);
    for (std::size_t r = 0; r < n_; ++r)
      for_each_bit(row(r), [&](std::size_t c) { t.set(c, r); });
    return t;
  }

  friend bool operator==(const BitMatrix &, const BitMatrix &) = default;

  /// Calls fn(index) for every set bit of a word run, ascending.
  template <class Fn>
  static void for_each_bit(std::span<const Word> bits, Fn &&fn) {
    for (std::size_t w = 0; w < bits.size(); ++w) {
      Word word = bits[w];
      while (word) {
        fn(w * kWordBits + static_cast<std::size_t>(std::countr_zero(word)));
        word &= word - 1;
      }
    }
  }

private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<Word> data_;
};

} // namespace mdl
