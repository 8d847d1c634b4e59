#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace pg4 {

/// Fixed-size packed bitset. Intersection counts are the workhorse of every
/// incidence spectrum, so `and_count` avoids materializing the intersection.
class Bitset {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  Bitset() = default;
  explicit Bitset(std::size_t size) : size_(size), words_((size + kWordBits - 1) / kWordBits, 0) {}

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  bool test(std::size_t i) const noexcept { return (words_[i / kWordBits] >> (i % kWordBits)) & 1u; }
  void set(std::size_t i) noexcept { words_[i / kWordBits] |= Word{1} << (i % kWordBits); }
  void reset(std::size_t i) noexcept { words_[i / kWordBits] &= ~(Word{1} << (i % kWordBits)); }

  std::size_t count() const noexcept {
    std::size_t n = 0;
    for (Word w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  std::size_t and_count(const Bitset& other) const noexcept {
    std::size_t n = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) {
      n += static_cast<std::size_t>(std::popcount(words_[i] & other.words_[i]));
    }
    return n;
  }

  bool intersects(const Bitset& other) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & other.words_[i]) return true;
    }
    return false;
  }

  bool is_subset_of(const Bitset& other) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & ~other.words_[i]) return false;
    }
    return true;
  }

  Bitset& operator|=(const Bitset& other) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
    return *this;
  }
  Bitset& operator&=(const Bitset& other) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
    return *this;
  }

  /// Calls fn(index) for every set bit in ascending order.
  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      for (Word bits = words_[w]; bits != 0; bits &= bits - 1) {
        fn(w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits)));
      }
    }
  }

  std::vector<std::uint32_t> indices() const {
    std::vector<std::uint32_t> out;
    out.reserve(count());
    for_each([&](std::size_t i) { out.push_back(static_cast<std::uint32_t>(i)); });
    return out;
  }

  std::span<const Word> words() const noexcept { return words_; }

  friend bool operator==(const Bitset&, const Bitset&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<Word> words_;
};

}  // namespace pg4
