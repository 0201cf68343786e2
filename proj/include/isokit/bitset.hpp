#pragma once

#include <bit>
#include <cstdint>
#include <cstddef>
#include <vector>

namespace isokit {

// Fixed-width dynamic bitset. All binary operations require equal widths;
// bits above size() are kept zero as an invariant.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(int nbits) : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

  int size() const { return nbits_; }

  bool test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(int i) { words_[i >> 6] |= std::uint64_t(1) << (i & 63); }
  void reset(int i) { words_[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }

  void clear() {
    for (auto& w : words_) w = 0;
  }

  int count() const {
    int c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }

  bool any() const {
    for (auto w : words_) {
      if (w) return true;
    }
    return false;
  }
  bool none() const { return !any(); }

  // -1 when no bit is set.
  int find_first() const { return find_next(-1); }

  int find_next(int prev) const {
    int i = prev + 1;
    if (i >= nbits_) return -1;
    int wi = i >> 6;
    std::uint64_t w = words_[wi] >> (i & 63);
    if (w) return i + std::countr_zero(w);
    for (wi++; wi < static_cast<int>(words_.size()); wi++) {
      if (words_[wi]) return wi * 64 + std::countr_zero(words_[wi]);
    }
    return -1;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (int i = find_first(); i >= 0; i = find_next(i)) f(i);
  }

  std::vector<int> to_indices() const {
    std::vector<int> out;
    out.reserve(count());
    for_each([&](int i) { out.push_back(i); });
    return out;
  }

  Bitset& operator|=(const Bitset& o) {
    for (std::size_t i = 0; i < words_.size(); i++) words_[i] |= o.words_[i];
    return *this;
  }
  Bitset& operator&=(const Bitset& o) {
    for (std::size_t i = 0; i < words_.size(); i++) words_[i] &= o.words_[i];
    return *this;
  }
  Bitset& operator^=(const Bitset& o) {
    for (std::size_t i = 0; i < words_.size(); i++) words_[i] ^= o.words_[i];
    return *this;
  }
  // set difference
  Bitset& operator-=(const Bitset& o) {
    for (std::size_t i = 0; i < words_.size(); i++) words_[i] &= ~o.words_[i];
    return *this;
  }

  friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
  friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
  friend Bitset operator^(Bitset a, const Bitset& b) { return a ^= b; }
  friend Bitset operator-(Bitset a, const Bitset& b) { return a -= b; }

  Bitset complement() const {
    Bitset r(*this);
    for (auto& w : r.words_) w = ~w;
    r.trim();
    return r;
  }

  bool is_subset_of(const Bitset& o) const {
    for (std::size_t i = 0; i < words_.size(); i++) {
      if (words_[i] & ~o.words_[i]) return false;
    }
    return true;
  }

  bool intersects(const Bitset& o) const {
    for (std::size_t i = 0; i < words_.size(); i++) {
      if (words_[i] & o.words_[i]) return true;
    }
    return false;
  }

  bool operator==(const Bitset& o) const { return nbits_ == o.nbits_ && words_ == o.words_; }
  bool operator!=(const Bitset& o) const { return !(*this == o); }

  // Order on sets viewed as sorted index lists: at the first index where the
  // sets differ, the one containing it comes first. Used for deterministic
  // tie-breaking.
  bool lex_less(const Bitset& o) const {
    for (std::size_t i = 0; i < words_.size(); i++) {
      std::uint64_t d = words_[i] ^ o.words_[i];
      if (d) {
        std::uint64_t low = d & (~d + 1);
        return words_[i] & low;
      }
    }
    return false;
  }

  std::uint64_t word(int i) const { return words_[i]; }
  int word_count() const { return static_cast<int>(words_.size()); }

  static Bitset full(int nbits) {
    Bitset b(nbits);
    for (auto& w : b.words_) w = ~std::uint64_t(0);
    b.trim();
    return b;
  }

  static Bitset of(int nbits, std::initializer_list<int> idx) {
    Bitset b(nbits);
    for (int i : idx) b.set(i);
    return b;
  }

 private:
  void trim() {
    int rem = nbits_ & 63;
    if (rem && !words_.empty()) words_.back() &= (std::uint64_t(1) << rem) - 1;
  }

  int nbits_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace isokit
