#pragma once

#include <cstddef>
#include <cstdint>
#include <compare>
#include <functional>
#include <utility>
#include <vector>

#include "apportion/error.hpp"

namespace apportion {

/// Binary max-heap over items 0..n-1, each carrying one key.
///
/// Heap slots hold (key, item) pairs; `pos_` maps an item to its slot, so the
/// key of any item can be changed in O(log n). Among equal keys the smaller
/// item index is considered larger, which gives FIFO order when items are
/// numbered by arrival. `Compare` is a three-way comparator on keys.
template <class Key, class Compare = std::compare_three_way>
class IndexedMaxQueue {
 public:
  static constexpr std::uint32_t npos = UINT32_MAX;

  IndexedMaxQueue() = default;

  /// Bottom-up heapify, O(n) comparisons.
  explicit IndexedMaxQueue(std::vector<Key> keys, Compare compare = Compare())
      : compare_(std::move(compare)) {
    const auto n = keys.size();
    if (n >= npos) throw Error(Errc::index_out_of_range, "too many items");
    heap_.reserve(n);
    pos_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      heap_.push_back({std::move(keys[i]), static_cast<std::uint32_t>(i)});
      pos_[i] = static_cast<std::uint32_t>(i);
    }
    for (std::size_t i = n / 2; i-- > 0;) sift_down(i);
  }

  [[nodiscard]] std::size_t size() const noexcept { return heap_.size(); }
  [[nodiscard]] bool empty() const noexcept { return heap_.empty(); }
  /// Number of items the queue was built with, present or not.
  [[nodiscard]] std::size_t capacity() const noexcept { return pos_.size(); }

  [[nodiscard]] bool contains(std::size_t item) const noexcept {
    return item < pos_.size() && pos_[item] != npos;
  }

  [[nodiscard]] const Key& key(std::size_t item) const {
    check_item(item);
    return heap_[pos_[item]].key;
  }

  /// Item with the largest key, smallest index among ties.
  [[nodiscard]] std::pair<std::size_t, const Key&> peek() const {
    if (heap_.empty()) throw Error(Errc::empty_queue, "peek on empty queue");
    return {heap_.front().item, heap_.front().key};
  }

  [[nodiscard]] std::size_t top() const {
    if (heap_.empty()) throw Error(Errc::empty_queue, "top on empty queue");
    return heap_.front().item;
  }

  void update(std::size_t item, Key key) {
    check_item(item);
    const std::size_t p = pos_[item];
    heap_[p].key = std::move(key);
    sift_down(sift_up(p));
  }

  /// Sets the key of the top item and restores heap order from the root.
  void update_top(Key key) {
    if (heap_.empty()) throw Error(Errc::empty_queue, "update_top on empty queue");
    heap_.front().key = std::move(key);
    sift_down(0);
  }

  void erase(std::size_t item) {
    check_item(item);
    const std::size_t p = pos_[item];
    const std::size_t last = heap_.size() - 1;
    if (p != last) {
      heap_[p] = std::move(heap_[last]);
      pos_[heap_[p].item] = static_cast<std::uint32_t>(p);
      heap_.pop_back();
      sift_down(sift_up(p));
    } else {
      heap_.pop_back();
    }
    pos_[item] = npos;
  }

  /// Removes and returns the top item. The hole left at the root is walked
  /// down to a leaf along the larger children, then refilled from the end.
  std::size_t pop() {
    const std::size_t item = top();
    const std::size_t last = heap_.size() - 1;
    std::size_t hole = 0;
    for (;;) {
      std::size_t child = 2 * hole + 1;
      if (child >= last) break;
      if (child + 1 < last) child += above(heap_[child + 1], heap_[child]) ? 1 : 0;
      move_to(hole, child);
      hole = child;
    }
    if (hole != last) {
      move_to(hole, last);
      heap_.pop_back();
      sift_up(hole);
    } else {
      heap_.pop_back();
    }
    pos_[item] = npos;
    return item;
  }

  /// Items in heap-array order.
  [[nodiscard]] std::vector<std::uint32_t> heap_order() const {
    std::vector<std::uint32_t> out;
    out.reserve(heap_.size());
    for (const auto& e : heap_) out.push_back(e.item);
    return out;
  }
  [[nodiscard]] const Compare& comparator() const noexcept { return compare_; }

 private:
  struct Entry {
    Key key;
    std::uint32_t item;
  };

  void check_item(std::size_t item) const {
    if (!contains(item)) throw Error(Errc::index_out_of_range, "item not in queue");
  }

  // True when entry a should sit above entry b.
  [[nodiscard]] bool above(const Entry& a, const Entry& b) const {
    const auto order = compare_(a.key, b.key);
    // Bitwise forms keep the child choice free of data-dependent branches.
    return (order > 0) | ((order == 0) & (a.item < b.item));
  }

  void move_to(std::size_t to, std::size_t from) {
    heap_[to] = std::move(heap_[from]);
    pos_[heap_[to].item] = static_cast<std::uint32_t>(to);
  }

  // Both sifts return the final slot.
  std::size_t sift_up(std::size_t slot) {
    Entry e = std::move(heap_[slot]);
    while (slot > 0) {
      const std::size_t parent = (slot - 1) / 2;
      if (!above(e, heap_[parent])) break;
      move_to(slot, parent);
      slot = parent;
    }
    pos_[e.item] = static_cast<std::uint32_t>(slot);
    heap_[slot] = std::move(e);
    return slot;
  }

  std::size_t sift_down(std::size_t slot) {
    const std::size_t n = heap_.size();
    Entry e = std::move(heap_[slot]);
    for (;;) {
      std::size_t child = 2 * slot + 1;
      if (child >= n) break;
      if (child + 1 < n && above(heap_[child + 1], heap_[child])) ++child;
      if (!above(heap_[child], e)) break;
      move_to(slot, child);
      slot = child;
    }
    pos_[e.item] = static_cast<std::uint32_t>(slot);
    heap_[slot] = std::move(e);
    return slot;
  }

  std::vector<Entry> heap_;
  std::vector<std::uint32_t> pos_;
  Compare compare_;
};

}  // namespace apportion
