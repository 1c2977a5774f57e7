#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

namespace pfree {

// Fixed-size bit vector used for one layer of a word set: bit r is the word of
// rank r. Bits past size() are always zero.
class Bitmap {
 public:
  Bitmap() = default;
  explicit Bitmap(std::uint64_t size);

  std::uint64_t size() const noexcept { return size_; }
  bool test(std::uint64_t i) const { return (blocks_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::uint64_t i) { blocks_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::uint64_t i) { blocks_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  void assign(std::uint64_t i, bool v) { v ? set(i) : reset(i); }
  void fill();

  std::uint64_t count() const;
  bool any() const;
  bool none() const { return !any(); }

  // First set bit at or after `from`.
  std::optional<std::uint64_t> find_next(std::uint64_t from) const;
  std::optional<std::uint64_t> find_first() const { return find_next(0); }

  template <typename F>
  void for_each_set(F&& f) const {
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      std::uint64_t x = blocks_[b];
      while (x) {
        const int t = std::countr_zero(x);
        f((static_cast<std::uint64_t>(b) << 6) + static_cast<std::uint64_t>(t));
        x &= x - 1;
      }
    }
  }

  // this[offset + i] |= src[i] for all i < src.size().
  void or_at(std::uint64_t offset, const Bitmap& src);
  // True when this[offset + i] && src[i] for some i.
  bool intersects_at(std::uint64_t offset, const Bitmap& src) const;
  // Copy of bits [offset, offset + len).
  Bitmap slice(std::uint64_t offset, std::uint64_t len) const;
  // Number of set bits in [offset, offset + len).
  std::uint64_t count_range(std::uint64_t offset, std::uint64_t len) const;

  Bitmap& operator|=(const Bitmap& o);
  Bitmap& operator&=(const Bitmap& o);
  Bitmap& subtract(const Bitmap& o);
  bool intersects(const Bitmap& o) const;
  bool is_subset_of(const Bitmap& o) const;

  const std::vector<std::uint64_t>& blocks() const noexcept { return blocks_; }
  static Bitmap from_blocks(std::uint64_t size, std::vector<std::uint64_t> blocks);

  friend bool operator==(const Bitmap&, const Bitmap&) = default;

 private:
  std::uint64_t word_at(std::uint64_t bit) const;  // 64 bits starting at `bit`
  void trim();

  std::uint64_t size_ = 0;
  std::vector<std::uint64_t> blocks_;
};

Bitmap operator|(Bitmap a, const Bitmap& b);
Bitmap operator&(Bitmap a, const Bitmap& b);

}  // namespace pfree
