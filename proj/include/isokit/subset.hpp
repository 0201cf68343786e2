#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "isokit/bitset.hpp"
#include "isokit/errors.hpp"
#include "isokit/group.hpp"

namespace isokit {

// A subset of a fixed group, stored as a membership bitset over the group's
// canonical element enumeration.
class GroupSubset {
 public:
  GroupSubset() = default;
  explicit GroupSubset(Group g) : group_(std::move(g)), bits_(group_.order()) {}
  GroupSubset(Group g, Bitset bits) : group_(std::move(g)), bits_(std::move(bits)) {
    if (bits_.size() != group_.order()) fail(errc::group_mismatch, "bitset width != group order");
  }
  GroupSubset(Group g, std::initializer_list<int> indices) : GroupSubset(std::move(g)) {
    for (int i : indices) insert(i);
  }
  GroupSubset(Group g, const std::vector<int>& indices) : GroupSubset(std::move(g)) {
    for (int i : indices) insert(i);
  }

  const Group& group() const { return group_; }
  const Bitset& bits() const { return bits_; }

  int size() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }
  bool contains(int index) const { return bits_.test(index); }

  void insert(int index) {
    if (index < 0 || index >= group_.order()) fail(errc::index_out_of_range, std::to_string(index));
    bits_.set(index);
  }
  void erase(int index) { bits_.reset(index); }

  std::vector<int> indices() const { return bits_.to_indices(); }

  template <typename F>
  void for_each(F&& f) const {
    bits_.for_each(f);
  }

  GroupSubset complement() const { return GroupSubset(group_, bits_.complement()); }

  // {x + g : x in this}
  GroupSubset translate(int g) const {
    GroupSubset r(group_);
    bits_.for_each([&](int x) { r.bits_.set(group_.add(x, g)); });
    return r;
  }

  // {-x : x in this}
  GroupSubset reflect() const {
    GroupSubset r(group_);
    bits_.for_each([&](int x) { r.bits_.set(group_.neg(x)); });
    return r;
  }

  bool is_subset_of(const GroupSubset& o) const { return bits_.is_subset_of(o.bits_); }
  bool intersects(const GroupSubset& o) const { return bits_.intersects(o.bits_); }

  friend GroupSubset operator|(const GroupSubset& a, const GroupSubset& b) {
    check_same(a, b);
    return GroupSubset(a.group_, a.bits_ | b.bits_);
  }
  friend GroupSubset operator&(const GroupSubset& a, const GroupSubset& b) {
    check_same(a, b);
    return GroupSubset(a.group_, a.bits_ & b.bits_);
  }
  friend GroupSubset operator-(const GroupSubset& a, const GroupSubset& b) {
    check_same(a, b);
    return GroupSubset(a.group_, a.bits_ - b.bits_);
  }
  friend GroupSubset operator^(const GroupSubset& a, const GroupSubset& b) {
    check_same(a, b);
    return GroupSubset(a.group_, a.bits_ ^ b.bits_);
  }

  bool operator==(const GroupSubset& o) const { return group_.same_as(o.group_) && bits_ == o.bits_; }
  bool operator!=(const GroupSubset& o) const { return !(*this == o); }

  static GroupSubset singleton(const Group& g, int index) {
    GroupSubset s(g);
    s.insert(index);
    return s;
  }

  static GroupSubset whole(const Group& g) { return GroupSubset(g, Bitset::full(g.order())); }

  static void check_same(const GroupSubset& a, const GroupSubset& b) {
    if (!a.group_.same_as(b.group_)) fail(errc::group_mismatch, "subsets live in different groups");
  }

 private:
  Group group_;
  Bitset bits_;
};

}  // namespace isokit
