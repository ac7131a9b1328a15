#pragma once

#include <cstddef>
#include <cstdint>
#include <iterator>

#include "gp2/bigarray.hpp"

namespace gp2 {

/// Head/tail/length of one doubly linked list whose entries live in a ListPool.
struct ListLinks {
  SlotIndex head = kNoSlot;
  SlotIndex tail = kNoSlot;
  std::size_t length = 0;
};

/// Doubly linked list entries stored in a BigArray. Several lists may share a
/// pool; each is identified by its ListLinks.
template <typename V>
class ListPool {
 public:
  struct Entry {
    V value;
    SlotIndex prev = kNoSlot;
    SlotIndex next = kNoSlot;
  };

  SlotIndex push_front(ListLinks& list, V value) { return insert_before(list, list.head, value); }
  SlotIndex push_back(ListLinks& list, V value) { return insert_before(list, kNoSlot, value); }

  /// Inserts before `position`, or at the tail when position is kNoSlot.
  SlotIndex insert_before(ListLinks& list, SlotIndex position, V value) {
    const SlotIndex prev = position == kNoSlot ? list.tail : entries_[position].prev;
    const SlotIndex index = entries_.emplace(Entry{value, prev, position});
    if (prev == kNoSlot) {
      list.head = index;
    } else {
      entries_[prev].next = index;
    }
    if (position == kNoSlot) {
      list.tail = index;
    } else {
      entries_[position].prev = index;
    }
    ++list.length;
    return index;
  }

  void erase(ListLinks& list, SlotIndex index) {
    const Entry& entry = entries_[index];
    if (entry.prev == kNoSlot) {
      list.head = entry.next;
    } else {
      entries_[entry.prev].next = entry.next;
    }
    if (entry.next == kNoSlot) {
      list.tail = entry.prev;
    } else {
      entries_[entry.next].prev = entry.prev;
    }
    --list.length;
    entries_.free(index);
  }

  const Entry& entry(SlotIndex index) const { return entries_[index]; }
  const V& value(SlotIndex index) const { return entries_[index].value; }
  std::size_t size() const noexcept { return entries_.size(); }
  const BigArray<Entry>& storage() const noexcept { return entries_; }

  /// Forward or backward walk over a list. Every advance bumps *ticks when it
  /// is non-null, which is how iteration cost is instrumented.
  class Range {
   public:
    class iterator {
     public:
      using value_type = V;
      using difference_type = std::ptrdiff_t;
      using iterator_category = std::forward_iterator_tag;

      iterator() = default;
      iterator(const ListPool* pool, SlotIndex at, bool reverse, std::uint64_t* ticks)
          : pool_(pool), at_(at), reverse_(reverse), ticks_(ticks) {}

      const V& operator*() const { return pool_->value(at_); }
      iterator& operator++() {
        const Entry& e = pool_->entry(at_);
        at_ = reverse_ ? e.prev : e.next;
        if (ticks_ != nullptr) ++*ticks_;
        return *this;
      }
      iterator operator++(int) {
        iterator copy = *this;
        ++*this;
        return copy;
      }
      bool operator==(const iterator& other) const { return at_ == other.at_; }
      SlotIndex position() const noexcept { return at_; }

     private:
      const ListPool* pool_ = nullptr;
      SlotIndex at_ = kNoSlot;
      bool reverse_ = false;
      std::uint64_t* ticks_ = nullptr;
    };

    Range(const ListPool* pool, SlotIndex start, bool reverse, std::uint64_t* ticks)
        : pool_(pool), start_(start), reverse_(reverse), ticks_(ticks) {}

    iterator begin() const { return iterator(pool_, start_, reverse_, ticks_); }
    iterator end() const { return iterator(pool_, kNoSlot, reverse_, ticks_); }
    bool empty() const noexcept { return start_ == kNoSlot; }

   private:
    const ListPool* pool_;
    SlotIndex start_;
    bool reverse_;
    std::uint64_t* ticks_;
  };

  Range items(const ListLinks& list, std::uint64_t* ticks = nullptr) const {
    return Range(this, list.head, false, ticks);
  }
  Range reversed(const ListLinks& list, std::uint64_t* ticks = nullptr) const {
    return Range(this, list.tail, true, ticks);
  }

 private:
  BigArray<Entry> entries_;
};

}  // namespace gp2
