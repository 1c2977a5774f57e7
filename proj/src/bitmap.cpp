#include "pfree/bitmap.hpp"

#include <bit>
#include <stdexcept>

#include "pfree/words.hpp"

namespace pfree {

namespace {

constexpr std::uint64_t blocks_for(std::uint64_t bits) { return (bits + 63) >> 6; }

void require_same_size(const Bitmap& a, const Bitmap& b) {
  if (a.size() != b.size()) throw InvalidArgument("bitmap size mismatch");
}

}  // namespace

Bitmap::Bitmap(std::uint64_t size) : size_(size), blocks_(blocks_for(size), 0) {}

void Bitmap::fill() {
  for (auto& b : blocks_) b = ~std::uint64_t{0};
  trim();
}

void Bitmap::trim() {
  if (const auto rem = size_ & 63; rem != 0 && !blocks_.empty())
    blocks_.back() &= (std::uint64_t{1} << rem) - 1;
}

std::uint64_t Bitmap::count() const {
  std::uint64_t c = 0;
  for (auto b : blocks_) c += static_cast<std::uint64_t>(std::popcount(b));
  return c;
}

bool Bitmap::any() const {
  for (auto b : blocks_)
    if (b) return true;
  return false;
}

std::optional<std::uint64_t> Bitmap::find_next(std::uint64_t from) const {
  if (from >= size_) return std::nullopt;
  std::uint64_t b = from >> 6;
  std::uint64_t x = blocks_[b] & (~std::uint64_t{0} << (from & 63));
  while (true) {
    if (x) return (b << 6) + static_cast<std::uint64_t>(std::countr_zero(x));
    if (++b >= blocks_.size()) return std::nullopt;
    x = blocks_[b];
  }
}

std::uint64_t Bitmap::word_at(std::uint64_t bit) const {
  const std::uint64_t b = bit >> 6;
  const unsigned shift = bit & 63;
  std::uint64_t lo = b < blocks_.size() ? blocks_[b] : 0;
  if (shift == 0) return lo;
  std::uint64_t hi = b + 1 < blocks_.size() ? blocks_[b + 1] : 0;
  return (lo >> shift) | (hi << (64 - shift));
}

void Bitmap::or_at(std::uint64_t offset, const Bitmap& src) {
  if (offset + src.size_ > size_) throw InvalidArgument("or_at out of range");
  const unsigned shift = offset & 63;
  const std::uint64_t base = offset >> 6;
  for (std::size_t i = 0; i < src.blocks_.size(); ++i) {
    const std::uint64_t v = src.blocks_[i];
    if (!v) continue;
    blocks_[base + i] |= v << shift;
    if (shift != 0 && base + i + 1 < blocks_.size()) blocks_[base + i + 1] |= v >> (64 - shift);
  }
}

bool Bitmap::intersects_at(std::uint64_t offset, const Bitmap& src) const {
  if (offset + src.size_ > size_) throw InvalidArgument("intersects_at out of range");
  for (std::size_t i = 0; i < src.blocks_.size(); ++i) {
    const std::uint64_t v = src.blocks_[i];
    if (v && (word_at(offset + (static_cast<std::uint64_t>(i) << 6)) & v)) return true;
  }
  return false;
}

Bitmap Bitmap::slice(std::uint64_t offset, std::uint64_t len) const {
  if (offset + len > size_) throw InvalidArgument("slice out of range");
  Bitmap out(len);
  for (std::size_t i = 0; i < out.blocks_.size(); ++i)
    out.blocks_[i] = word_at(offset + (static_cast<std::uint64_t>(i) << 6));
  out.trim();
  return out;
}

std::uint64_t Bitmap::count_range(std::uint64_t offset, std::uint64_t len) const {
  if (offset + len > size_) throw InvalidArgument("count_range out of range");
  std::uint64_t c = 0;
  std::uint64_t i = 0;
  for (; i + 64 <= len; i += 64) c += static_cast<std::uint64_t>(std::popcount(word_at(offset + i)));
  if (i < len) {
    const std::uint64_t mask = (std::uint64_t{1} << (len - i)) - 1;
    c += static_cast<std::uint64_t>(std::popcount(word_at(offset + i) & mask));
  }
  return c;
}

Bitmap& Bitmap::operator|=(const Bitmap& o) {
  require_same_size(*this, o);
  for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] |= o.blocks_[i];
  return *this;
}

Bitmap& Bitmap::operator&=(const Bitmap& o) {
  require_same_size(*this, o);
  for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] &= o.blocks_[i];
  return *this;
}

Bitmap& Bitmap::subtract(const Bitmap& o) {
  require_same_size(*this, o);
  for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] &= ~o.blocks_[i];
  return *this;
}

bool Bitmap::intersects(const Bitmap& o) const {
  require_same_size(*this, o);
  for (std::size_t i = 0; i < blocks_.size(); ++i)
    if (blocks_[i] & o.blocks_[i]) return true;
  return false;
}

bool Bitmap::is_subset_of(const Bitmap& o) const {
  require_same_size(*this, o);
  for (std::size_t i = 0; i < blocks_.size(); ++i)
    if (blocks_[i] & ~o.blocks_[i]) return false;
  return true;
}

Bitmap Bitmap::from_blocks(std::uint64_t size, std::vector<std::uint64_t> blocks) {
  if (blocks.size() != blocks_for(size)) throw InvalidArgument("block count does not match bitmap size");
  Bitmap out;
  out.size_ = size;
  out.blocks_ = std::move(blocks);
  out.trim();
  return out;
}

Bitmap operator|(Bitmap a, const Bitmap& b) { return a |= b; }
Bitmap operator&(Bitmap a, const Bitmap& b) { return a &= b; }

}  // namespace pfree
