#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace idxminer {

// Fixed-width bit vector over a context's attribute axis. All sets combined
// in one operation must share the same width.
class AttrSet {
 public:
  AttrSet() = default;
  explicit AttrSet(std::size_t width) : width_(width), words_((width + 63) / 64, 0) {}

  static AttrSet full(std::size_t width) {
    AttrSet s(width);
    for (std::size_t i = 0; i < width; ++i) s.set(i);
    return s;
  }

  static AttrSet of(std::size_t width, std::span<const std::size_t> indices) {
    AttrSet s(width);
    for (auto i : indices) s.set(i);
    return s;
  }

  std::size_t width() const { return width_; }

  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  void reset(std::size_t i) { words_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }

  std::size_t count() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  bool empty() const {
    for (auto w : words_) {
      if (w) return false;
    }
    return true;
  }

  bool is_subset_of(const AttrSet& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & ~other.words_[i]) return false;
    }
    return true;
  }

  AttrSet& operator&=(const AttrSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  AttrSet& operator|=(const AttrSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  friend AttrSet operator&(AttrSet a, const AttrSet& b) { return a &= b; }
  friend AttrSet operator|(AttrSet a, const AttrSet& b) { return a |= b; }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      auto bits = words_[w];
      while (bits) {
        out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
    return out;
  }

  std::span<const std::uint64_t> words() const { return words_; }

  friend bool operator==(const AttrSet&, const AttrSet&) = default;

  // Lexicographic order of the sorted index lists.
  friend bool lex_less(const AttrSet& a, const AttrSet& b) {
    const auto ia = a.indices();
    const auto ib = b.indices();
    return std::lexicographical_compare(ia.begin(), ia.end(), ib.begin(), ib.end());
  }

 private:
  std::size_t width_ = 0;
  std::vector<std::uint64_t> words_;
};

struct AttrSetHash {
  std::size_t operator()(const AttrSet& s) const {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto w : s.words()) {
      h ^= w;
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace idxminer
