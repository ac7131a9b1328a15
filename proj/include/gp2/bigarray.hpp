#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <new>
#include <type_traits>
#include <utility>
#include <vector>

#include "gp2/error.hpp"

namespace gp2 {

using SlotIndex = std::uint64_t;
inline constexpr SlotIndex kNoSlot = std::numeric_limits<SlotIndex>::max();

struct SlotLocation {
  std::size_t segment;
  std::size_t offset;
  bool operator==(const SlotLocation&) const = default;
};

/// Maps a global slot index to its (segment, offset) pair. Segment k holds
/// 2^k slots, so the segment is the position of the largest set bit of i+1.
constexpr SlotLocation locate(SlotIndex i) noexcept {
  const SlotIndex shifted = i + 1;
  const auto segment = static_cast<std::size_t>(std::bit_width(shifted) - 1);
  return {segment, static_cast<std::size_t>(shifted - (SlotIndex{1} << segment))};
}

/// Segmented growable slot store.
///
/// Segments double in size (1, 2, 4, ...) and are never moved once created,
/// so a payload keeps its address for as long as it is occupied. Freed slots
/// are threaded into an intrusive LIFO free list stored in the holes
/// themselves; alloc pops from that list before appending.
template <typename T>
class BigArray {
 public:
  BigArray() = default;
  BigArray(const BigArray&) = delete;
  BigArray& operator=(const BigArray&) = delete;

  BigArray(BigArray&& other) noexcept
      : segments_(std::move(other.segments_)),
        first_hole_(std::exchange(other.first_hole_, kNoSlot)),
        size_(std::exchange(other.size_, 0)),
        appended_(std::exchange(other.appended_, 0)) {
    other.segments_.clear();
  }

  BigArray& operator=(BigArray&& other) noexcept {
    if (this != &other) {
      destroy_all();
      segments_ = std::move(other.segments_);
      other.segments_.clear();
      first_hole_ = std::exchange(other.first_hole_, kNoSlot);
      size_ = std::exchange(other.size_, 0);
      appended_ = std::exchange(other.appended_, 0);
    }
    return *this;
  }

  ~BigArray() { destroy_all(); }

  template <typename... Args>
  SlotIndex emplace(Args&&... args) {
    if (first_hole_ != kNoSlot) {
      const SlotIndex index = first_hole_;
      Slot& slot = slot_at(index);
      const SlotIndex next = slot.next_hole;
      ::new (static_cast<void*>(std::addressof(slot.value))) T(std::forward<Args>(args)...);
      slot.occupied = true;
      first_hole_ = next;
      ++size_;
      return index;
    }
    const SlotIndex index = appended_;
    const SlotLocation loc = locate(index);
    if (loc.segment == segments_.size()) {
      segments_.push_back(std::make_unique<Slot[]>(std::size_t{1} << loc.segment));
    }
    Slot& slot = segments_[loc.segment][loc.offset];
    ::new (static_cast<void*>(std::addressof(slot.value))) T(std::forward<Args>(args)...);
    slot.occupied = true;
    ++appended_;
    ++size_;
    return index;
  }

  SlotIndex alloc(T value) { return emplace(std::move(value)); }

  void free(SlotIndex index) {
    GP2_CHECK(index < appended_, "BigArray::free: index out of range");
    Slot& slot = slot_at(index);
    GP2_CHECK(slot.occupied, "BigArray::free: slot is already a hole");
    std::destroy_at(std::addressof(slot.value));
    slot.occupied = false;
    slot.next_hole = first_hole_;
    first_hole_ = index;
    --size_;
  }

  T& operator[](SlotIndex index) { return checked(index).value; }
  const T& operator[](SlotIndex index) const { return checked(index).value; }
  T& get(SlotIndex index) { return (*this)[index]; }
  const T& get(SlotIndex index) const { return (*this)[index]; }

  bool occupied(SlotIndex index) const noexcept {
    return index < appended_ && slot_at(index).occupied;
  }

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }
  /// Number of slots ever appended (occupied + holes).
  std::size_t appended() const noexcept { return appended_; }
  std::size_t capacity() const noexcept {
    return segments_.empty() ? 0 : (std::size_t{1} << segments_.size()) - 1;
  }
  std::size_t segment_count() const noexcept { return segments_.size(); }
  SlotIndex first_hole() const noexcept { return first_hole_; }

  /// Walks the free list from its head. Diagnostic use only; O(holes).
  std::vector<SlotIndex> hole_chain() const {
    std::vector<SlotIndex> chain;
    for (SlotIndex i = first_hole_; i != kNoSlot;) {
      chain.push_back(i);
      GP2_CHECK(chain.size() <= appended_, "BigArray: cycle in hole chain");
      i = slot_at(i).next_hole;
    }
    return chain;
  }

 private:
  struct Slot {
    union {
      T value;
      SlotIndex next_hole;
    };
    bool occupied;

    Slot() noexcept : next_hole(kNoSlot), occupied(false) {}
    ~Slot() {}
  };

  Slot& slot_at(SlotIndex index) {
    const SlotLocation loc = locate(index);
    return segments_[loc.segment][loc.offset];
  }
  const Slot& slot_at(SlotIndex index) const {
    const SlotLocation loc = locate(index);
    return segments_[loc.segment][loc.offset];
  }

  Slot& checked(SlotIndex index) {
    GP2_CHECK(index < appended_, "BigArray: access beyond appended range");
    Slot& slot = slot_at(index);
    GP2_CHECK(slot.occupied, "BigArray: access to a hole");
    return slot;
  }
  const Slot& checked(SlotIndex index) const {
    GP2_CHECK(index < appended_, "BigArray: access beyond appended range");
    const Slot& slot = slot_at(index);
    GP2_CHECK(slot.occupied, "BigArray: access to a hole");
    return slot;
  }

  void destroy_all() noexcept {
    if constexpr (!std::is_trivially_destructible_v<T>) {
      for (SlotIndex i = 0; i < appended_; ++i) {
        Slot& slot = slot_at(i);
        if (slot.occupied) std::destroy_at(std::addressof(slot.value));
      }
    }
    segments_.clear();
    first_hole_ = kNoSlot;
    size_ = 0;
    appended_ = 0;
  }

  std::vector<std::unique_ptr<Slot[]>> segments_;
  SlotIndex first_hole_ = kNoSlot;
  std::size_t size_ = 0;
  std::size_t appended_ = 0;
};

}  // namespace gp2
