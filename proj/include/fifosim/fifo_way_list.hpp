#pragma once

#include <cassert>
#include <cstdint>
#include <optional>
#include <vector>

namespace fifosim {

/// Circular distance from the replacement cursor to a slot, measured in the
/// direction the cursor moves.  Distance 0 means the slot is evicted next.
inline std::uint32_t fifo_distance(std::uint32_t slot, std::uint32_t cursor,
                                   std::uint32_t capacity) {
  std::uint32_t d = slot + capacity - cursor;  // both operands are < capacity
  return d >= capacity ? d - capacity : d;
}

/// One FIFO cache set: a fixed-capacity circular buffer whose cursor always
/// points at the next victim.  Lookups never change state; the only mutation
/// is insert(), which overwrites the cursor slot and advances the cursor.
/// From a cold start slots therefore fill in index order, and the cursor is
/// always insert_count() % capacity().
///
/// The most-recently-inserted (MRI) slot is the one just behind the cursor.
/// Callers must not insert a value that is already resident.
template <typename T>
class FifoWayList {
 public:
  explicit FifoWayList(std::uint32_t capacity) : slots_(capacity), capacity_(capacity) {
    assert(capacity >= 1);
  }

  std::uint32_t capacity() const { return capacity_; }
  std::uint32_t cursor() const { return cursor_; }
  std::uint64_t insert_count() const { return insert_count_; }

  std::uint32_t occupied() const {
    return insert_count_ < capacity_ ? static_cast<std::uint32_t>(insert_count_) : capacity_;
  }
  bool slot_occupied(std::uint32_t slot) const { return slot < occupied(); }

  const T& slot(std::uint32_t s) const {
    assert(slot_occupied(s));
    return slots_[s];
  }

  std::optional<std::uint32_t> find(const T& v) const {
    std::uint32_t n = occupied();
    for (std::uint32_t s = 0; s < n; ++s)
      if (slots_[s] == v) return s;
    return std::nullopt;
  }

  bool contains(const T& v) const { return find(v).has_value(); }

  std::optional<std::uint32_t> mri_slot() const {
    if (insert_count_ == 0) return std::nullopt;
    return cursor_ == 0 ? capacity_ - 1 : cursor_ - 1;
  }

  bool full() const { return insert_count_ >= capacity_; }

  /// The occupant the next insert() will evict; only valid while full().
  const T& victim() const {
    assert(full());
    return slots_[cursor_];
  }

  /// Inserts v at the cursor and advances it; returns the evicted occupant,
  /// if the slot held one.
  std::optional<T> insert(const T& v) {
    assert(!contains(v));
    std::optional<T> victim;
    if (insert_count_ >= capacity_) victim = slots_[cursor_];
    slots_[cursor_] = v;
    cursor_ = cursor_ + 1 == capacity_ ? 0 : cursor_ + 1;
    ++insert_count_;
    return victim;
  }

 private:
  std::vector<T> slots_;
  std::uint32_t capacity_;
  std::uint32_t cursor_ = 0;
  std::uint64_t insert_count_ = 0;
};

}  // namespace fifosim
