#include "fifosim/lut.hpp"

#include <algorithm>
#include <limits>

#include "fifosim/config.hpp"

namespace fifosim {

LookupTable::LookupTable(std::uint32_t num_configs, unsigned bucket_bits)
    : num_configs_(num_configs),
      words_per_entry_((num_configs + 63) / 64),
      bucket_mask_((std::uint64_t{1} << bucket_bits) - 1),
      bucket_bits_(bucket_bits) {
  if (num_configs == 0) throw ConfigError("lookup table needs at least one configuration");
  if (bucket_bits > 24) throw ConfigError("bucket bits out of range (max 24)");
  buckets_.resize(std::size_t{1} << bucket_bits);
}

namespace {

struct BlockLess {
  bool operator()(const auto& entry, BlockAddress block) const { return entry.block < block; }
};

}  // namespace

EntryHandle LookupTable::insert(BlockAddress block) {
  if (blocks_.size() >= std::numeric_limits<EntryHandle>::max())
    throw TraceError("lookup table full: too many distinct blocks");
  EntryHandle h = static_cast<EntryHandle>(blocks_.size());
  blocks_.push_back(block);
  presence_.resize(presence_.size() + words_per_entry_, 0);

  auto& bucket = buckets_[block & bucket_mask_];
  auto it = std::lower_bound(bucket.begin(), bucket.end(), block, BlockLess{});
  bucket.insert(it, BucketEntry{block, h});
  return h;
}

std::uint64_t LookupTable::memory_bytes() const {
  std::uint64_t bytes = buckets_.capacity() * sizeof(buckets_[0]);
  for (const auto& b : buckets_) bytes += b.capacity() * sizeof(BucketEntry);
  bytes += blocks_.capacity() * sizeof(BlockAddress);
  bytes += presence_.capacity() * sizeof(std::uint64_t);
  return bytes;
}

}  // namespace fifosim
