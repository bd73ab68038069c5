#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fifosim/trace.hpp"

namespace fifosim {

/// Handle to a lookup-table entry.  Handles are dense indices, stable for
/// the lifetime of the table (entries are never removed).
using EntryHandle = std::uint32_t;

inline constexpr unsigned kDefaultLutBits = 10;

/// Block directory shared by every configuration of one engine.  Each
/// distinct block seen so far owns one entry carrying a presence bitset
/// with exactly one bit per configuration: bit c says whether the block is
/// currently resident in configuration c.
///
/// Entries are found by hashing the low bucket_bits of the block address
/// into a bucket and binary-searching the bucket, which is kept sorted by
/// full address.
class LookupTable {
 public:
  explicit LookupTable(std::uint32_t num_configs, unsigned bucket_bits = kDefaultLutBits);

  std::optional<EntryHandle> lookup(BlockAddress block) const {
    const auto& bucket = buckets_[block & bucket_mask_];
    std::size_t lo = 0, hi = bucket.size();
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      if (bucket[mid].block < block)
        lo = mid + 1;
      else
        hi = mid;
    }
    if (lo == bucket.size() || bucket[lo].block != block) return std::nullopt;
    return bucket[lo].handle;
  }

  /// Adds an entry for a block not yet present (all presence bits clear).
  EntryHandle insert(BlockAddress block);

  bool presence(EntryHandle h, std::uint32_t config) const {
    const std::uint64_t* w = presence_row(h);
    return (w[config >> 6] >> (config & 63)) & 1;
  }

  /// Entry h's presence words, one bit per configuration.  The pointer stays
  /// live through set_presence but is invalidated by insert().
  const std::uint64_t* presence_row(EntryHandle h) const {
    return &presence_[std::size_t{h} * words_per_entry_];
  }

  void set_presence(EntryHandle h, std::uint32_t config, bool value) {
    std::uint64_t& w = presence_[std::size_t{h} * words_per_entry_ + (config >> 6)];
    std::uint64_t bit = std::uint64_t{1} << (config & 63);
    if (value)
      w |= bit;
    else
      w &= ~bit;
  }

  BlockAddress block_of(EntryHandle h) const { return blocks_[h]; }
  std::uint64_t size() const { return blocks_.size(); }
  std::uint32_t num_configs() const { return num_configs_; }
  unsigned bucket_bits() const { return bucket_bits_; }
  std::uint64_t memory_bytes() const;

 private:
  struct BucketEntry {
    BlockAddress block;
    EntryHandle handle;
  };

  std::vector<std::vector<BucketEntry>> buckets_;
  std::vector<BlockAddress> blocks_;   // handle -> block address
  std::vector<std::uint64_t> presence_;  // words_per_entry_ words per handle
  std::uint32_t num_configs_;
  std::uint32_t words_per_entry_;
  std::uint64_t bucket_mask_;
  unsigned bucket_bits_;
};

}  // namespace fifosim
