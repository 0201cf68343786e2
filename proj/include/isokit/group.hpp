#pragma once

#include <cstdint>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "isokit/errors.hpp"

namespace isokit {

inline constexpr int kDefaultMaxGroupOrder = 4096;

// A finite abelian group presented as Z_{n1} x ... x Z_{nk}.
struct GroupSpec {
  std::vector<int> orders;

  long long order() const {
    long long n = 1;
    for (int o : orders) n *= o;
    return n;
  }
};

// Element as a coordinate vector, one residue per cyclic factor.
using GroupElement = std::vector<int>;

// Finite abelian group with elements identified with indices in [0, order).
//
// Two representations share one interface: a product of cyclic factors with
// mixed-radix indexing (index(e) = sum e_i * prod_{j<i} n_j), and an explicit
// Cayley table (used for quotient groups and subgroups re-based as groups).
// The identity always has index 0. Cheap to copy; immutable once built.
class Group {
 public:
  Group() = default;

  static Group product(const GroupSpec& spec, int max_order = kDefaultMaxGroupOrder) {
    if (spec.orders.empty()) fail(errc::bad_order, "group needs at least one cyclic factor");
    for (int o : spec.orders) {
      if (o < 2) fail(errc::bad_order, "cyclic factor " + std::to_string(o) + " < 2");
    }
    if (spec.order() > max_order) {
      fail(errc::spec_too_large, "group order " + std::to_string(spec.order()) +
                                     " exceeds maximum " + std::to_string(max_order));
    }
    auto impl = std::make_shared<Impl>();
    impl->orders = spec.orders;
    impl->strides.resize(spec.orders.size());
    int n = 1;
    for (std::size_t i = 0; i < spec.orders.size(); i++) {
      impl->strides[i] = n;
      n *= spec.orders[i];
    }
    impl->n = n;
    Group g;
    g.impl_ = std::move(impl);
    return g;
  }

  // Table must be a row-major n*n Cayley table with identity 0. Commutativity,
  // the Latin-square property and inverses are always checked; associativity
  // is checked in full for n <= 64 (it is inherited by construction for the
  // quotient and subgroup tables built internally).
  static Group from_table(std::vector<std::uint16_t> table) {
    std::size_t n = 0;
    while (n * n < table.size()) n++;
    if (n * n != table.size() || n == 0) fail(errc::bad_order, "table is not square");
    auto impl = std::make_shared<Impl>();
    impl->n = static_cast<int>(n);
    impl->table = std::move(table);
    validate_table(*impl);
    Group g;
    g.impl_ = std::move(impl);
    return g;
  }

  int order() const { return impl_->n; }
  int zero() const { return 0; }

  int add(int a, int b) const {
    const Impl& im = *impl_;
    if (!im.table.empty()) return im.table[static_cast<std::size_t>(a) * im.n + b];
    int r = 0;
    for (std::size_t i = 0; i < im.orders.size(); i++) {
      int ai = (a / im.strides[i]) % im.orders[i];
      int bi = (b / im.strides[i]) % im.orders[i];
      int s = ai + bi;
      if (s >= im.orders[i]) s -= im.orders[i];
      r += s * im.strides[i];
    }
    return r;
  }

  int neg(int a) const {
    const Impl& im = *impl_;
    if (!im.table.empty()) return im.neg[a];
    int r = 0;
    for (std::size_t i = 0; i < im.orders.size(); i++) {
      int ai = (a / im.strides[i]) % im.orders[i];
      if (ai) r += (im.orders[i] - ai) * im.strides[i];
    }
    return r;
  }

  int sub(int a, int b) const { return add(a, neg(b)); }

  bool is_product() const { return impl_->table.empty(); }
  const std::vector<int>& factor_orders() const { return impl_->orders; }
  int rank() const { return static_cast<int>(impl_->orders.size()); }

  GroupElement coords_of(int index) const {
    const Impl& im = *impl_;
    if (!im.table.empty()) return {index};
    GroupElement e(im.orders.size());
    for (std::size_t i = 0; i < im.orders.size(); i++) e[i] = (index / im.strides[i]) % im.orders[i];
    return e;
  }

  // Coordinates are reduced componentwise mod n_i (negatives allowed).
  int index_of(const GroupElement& coords) const {
    const Impl& im = *impl_;
    if (!im.table.empty()) {
      if (coords.size() != 1) fail(errc::rank_mismatch, "table group elements have rank 1");
      if (coords[0] < 0 || coords[0] >= im.n) fail(errc::index_out_of_range, "element index");
      return coords[0];
    }
    if (coords.size() != im.orders.size()) {
      fail(errc::rank_mismatch, "expected " + std::to_string(im.orders.size()) + " coordinates, got " +
                                    std::to_string(coords.size()));
    }
    int r = 0;
    for (std::size_t i = 0; i < im.orders.size(); i++) {
      int c = coords[i] % im.orders[i];
      if (c < 0) c += im.orders[i];
      r += c * im.strides[i];
    }
    return r;
  }

  bool same_as(const Group& o) const {
    if (impl_ == o.impl_) return true;
    if (!impl_ || !o.impl_) return false;
    if (is_product() && o.is_product()) return impl_->orders == o.impl_->orders;
    return false;
  }

  bool valid() const { return impl_ != nullptr; }

  // Stable key for caches.
  const void* key() const { return impl_.get(); }

 private:
  struct Impl {
    int n = 0;
    std::vector<int> orders;   // product form only
    std::vector<int> strides;  // product form only
    std::vector<std::uint16_t> table;  // table form only
    std::vector<std::uint16_t> neg;    // table form only
  };

  static void validate_table(Impl& im) {
    const int n = im.n;
    auto at = [&](int a, int b) { return im.table[static_cast<std::size_t>(a) * n + b]; };
    im.neg.assign(n, 0);
    std::vector<char> seen(n);
    for (int a = 0; a < n; a++) {
      if (at(a, 0) != a || at(0, a) != a) fail(errc::not_a_subgroup, "table identity is not 0");
      std::fill(seen.begin(), seen.end(), 0);
      bool has_inv = false;
      for (int b = 0; b < n; b++) {
        int v = at(a, b);
        if (v < 0 || v >= n) fail(errc::not_a_subgroup, "table entry out of range");
        if (seen[v]) fail(errc::not_a_subgroup, "table row is not a permutation");
        seen[v] = 1;
        if (at(a, b) != at(b, a)) fail(errc::not_a_subgroup, "table is not commutative");
        if (v == 0) {
          im.neg[a] = static_cast<std::uint16_t>(b);
          has_inv = true;
        }
      }
      if (!has_inv) fail(errc::not_a_subgroup, "missing inverse");
    }
    if (n <= 64) {
      for (int a = 0; a < n; a++)
        for (int b = 0; b < n; b++)
          for (int c = 0; c < n; c++)
            if (at(at(a, b), c) != at(a, at(b, c))) fail(errc::not_a_subgroup, "table is not associative");
    }
  }

  std::shared_ptr<const Impl> impl_;
};

inline Group make_group(const GroupSpec& spec, int max_order = kDefaultMaxGroupOrder) {
  return Group::product(spec, max_order);
}

}  // namespace isokit
