#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "isokit/bitset.hpp"
#include "isokit/errors.hpp"
#include "isokit/group.hpp"
#include "isokit/subset.hpp"

namespace isokit {

// Dense subset machinery for groups of order <= 64: subsets are single
// uint64 masks and translation by a group element is two-or-three table
// lookups (one per 8-bit chunk of the mask). This is what makes the
// exhaustive sweeps cheap; the generic GroupSubset path stays the reference
// implementation.
class SmallGroupOps {
 public:
  explicit SmallGroupOps(const Group& g) : g_(g), n_(g.order()) {
    if (n_ > 64) fail(errc::budget_exceeded, "dense engine supports |G| <= 64");
    full_ = n_ == 64 ? ~std::uint64_t(0) : ((std::uint64_t(1) << n_) - 1);
    chunks_ = (n_ + 7) / 8;
    trans_.assign(static_cast<std::size_t>(n_) * chunks_ * 256, 0);
    for (int e = 0; e < n_; e++) {
      for (int c = 0; c < chunks_; c++) {
        for (int byte = 0; byte < 256; byte++) {
          std::uint64_t m = 0;
          for (int b = 0; b < 8; b++) {
            int x = c * 8 + b;
            if ((byte >> b & 1) && x < n_) m |= std::uint64_t(1) << g.add(x, e);
          }
          trans_[(static_cast<std::size_t>(e) * chunks_ + c) * 256 + byte] = m;
        }
      }
    }
    neg_.resize(n_);
    for (int e = 0; e < n_; e++) neg_[e] = g.neg(e);
  }

  const Group& group() const { return g_; }
  int order() const { return n_; }
  std::uint64_t full_mask() const { return full_; }

  std::uint64_t translate(std::uint64_t mask, int e) const {
    const std::uint64_t* t = &trans_[static_cast<std::size_t>(e) * chunks_ * 256];
    std::uint64_t r = 0;
    for (int c = 0; c < chunks_; c++) r |= t[static_cast<std::size_t>(c) * 256 + ((mask >> (8 * c)) & 0xff)];
    return r;
  }

  std::uint64_t sumset(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t r = 0;
    while (b) {
      int e = std::countr_zero(b);
      b &= b - 1;
      r |= translate(a, e);
    }
    return r;
  }

  std::uint64_t reflect(std::uint64_t a) const {
    std::uint64_t r = 0;
    while (a) {
      int e = std::countr_zero(a);
      a &= a - 1;
      r |= std::uint64_t(1) << neg_[e];
    }
    return r;
  }

  // Stabilizer {g : a + g = a} as a mask. Always contains 0 for nonempty a.
  std::uint64_t stabilizer(std::uint64_t a) const {
    std::uint64_t r = 0;
    for (int e = 0; e < n_; e++) {
      if (translate(a, e) == a) r |= std::uint64_t(1) << e;
    }
    return r;
  }

  // Carrier of the subgroup generated by the elements of mask.
  std::uint64_t span(std::uint64_t gens) const {
    std::uint64_t closed = 1;  // the identity
    std::uint64_t frontier = 1;
    while (frontier) {
      std::uint64_t next = 0;
      std::uint64_t f = frontier;
      while (f) {
        int x = std::countr_zero(f);
        f &= f - 1;
        std::uint64_t gs = gens;
        while (gs) {
          int y = std::countr_zero(gs);
          gs &= gs - 1;
          std::uint64_t bit = std::uint64_t(1) << g_.add(x, y);
          if (!(closed & bit)) {
            closed |= bit;
            next |= bit;
          }
          bit = std::uint64_t(1) << g_.sub(x, y);
          if (!(closed & bit)) {
            closed |= bit;
            next |= bit;
          }
        }
      }
      frontier = next;
    }
    return closed;
  }

  int neg_of(int e) const { return neg_[e]; }

  GroupSubset to_subset(std::uint64_t mask) const {
    GroupSubset s(g_);
    while (mask) {
      int e = std::countr_zero(mask);
      mask &= mask - 1;
      s.insert(e);
    }
    return s;
  }

  static std::uint64_t mask_of(const GroupSubset& s) {
    std::uint64_t m = 0;
    s.for_each([&](int e) { m |= std::uint64_t(1) << e; });
    return m;
  }

 private:
  Group g_;
  int n_;
  int chunks_;
  std::uint64_t full_;
  std::vector<std::uint64_t> trans_;
  std::vector<int> neg_;
};

}  // namespace isokit
