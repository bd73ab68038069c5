#pragma once

#include <cassert>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fifosim/config.hpp"
#include "fifosim/fifo_way_list.hpp"
#include "fifosim/lut.hpp"
#include "fifosim/trace.hpp"

namespace fifosim {

/// Minimum FIFO distance (in the eviction direction) a block must have from
/// a larger list's cursor, at the moment it is inserted into a list of
/// associativity a, for its residency in the larger list to be guaranteed
/// for as long as it stays in the smaller one: 2*a - 3.
inline std::uint32_t p1_threshold(std::uint32_t smallest_assoc) {
  assert(smallest_assoc >= 2);
  return 2 * smallest_assoc - 3;
}

/// Per-configuration counters.  hits includes every attributed kind, so
/// hits + misses == accesses and p1+p2+p3+dup <= hits.
struct ConfigStats {
  std::uint64_t accesses = 0;
  std::uint64_t hits = 0;
  std::uint64_t misses = 0;
  std::uint64_t p1_hits = 0;
  std::uint64_t p2_hits = 0;
  std::uint64_t p3_hits = 0;
  std::uint64_t dup_hits = 0;
};

enum class Verdict : std::uint8_t { miss, hit, hit_p1, hit_p2, hit_p3, hit_dup };

inline bool is_hit(Verdict v) { return v != Verdict::miss; }
inline bool is_fast_path_hit(Verdict v) {
  return v == Verdict::hit_p1 || v == Verdict::hit_p2 || v == Verdict::hit_p3;
}

/// Per-configuration verdicts for a single access, indexed by config id.
struct AccessOutcome {
  std::vector<Verdict> verdicts;
};

struct SimReport {
  CacheGrid grid;
  std::vector<ConfigStats> stats;  // indexed by config id
  double wall_seconds = 0.0;
  std::uint64_t distinct_blocks = 0;
  std::uint64_t lut_bytes = 0;
};

/// Single-pass simulator for every configuration of one grid at once.
///
/// State is a block directory (LookupTable) plus, per set size ("level"),
/// an eagerly allocated array of nodes, one per set; a node holds one
/// FifoWayList per associativity and the fast-path flags below.  An access
/// walks levels in ascending set-size order and associativities ascending
/// within a level, reading each configuration's hit/miss from the block's
/// presence bit.  Three guarantees of FIFO replacement let the walk stop
/// early and credit every remaining configuration with a hit:
///
///   p1  A block inserted into the smallest list of a node while resident
///       at distance >= p1_threshold from every larger list's cursor stays
///       resident in those lists at least as long as it stays in the
///       smallest.  Tracked per smallest-list slot (intersection flag);
///       a flagged hit credits the rest of the node's associativities.
///   p2  The most recently inserted block of a 2-way list is resident in
///       every configuration with a set size at least the node's.  A hit
///       on the MRI block credits every remaining configuration.
///   p3  After a 2-way list takes a hit on its non-MRI block, both of its
///       occupants are resident in every remaining configuration until the
///       next insertion into that list.  Tracked per node (track flag); a
///       hit while the flag is set credits every remaining configuration.
///
/// Nodes carry track flags when the grid's smallest associativity is 2 and
/// intersection flags otherwise.  Consecutive accesses to one block are
/// answered as duplicate hits for every configuration without touching any
/// state, since the most recently accessed block is resident everywhere.
class Engine {
 public:
  explicit Engine(const CacheGrid& grid, unsigned lut_bucket_bits = kDefaultLutBits);

  /// Simulates one access; counters only.
  void access(BlockAddress block) { step<false>(block, nullptr); }

  /// Simulates one access and reports the per-configuration verdicts.
  void process_access_into(BlockAddress block, AccessOutcome& out) { step<true>(block, &out); }
  AccessOutcome process_access(BlockAddress block) {
    AccessOutcome out;
    process_access_into(block, out);
    return out;
  }

  SimReport report() const;

  const CacheGrid& grid() const { return grid_; }
  const LookupTable& lut() const { return lut_; }
  std::uint64_t accesses() const { return total_accesses_; }
  std::uint64_t distinct_blocks() const { return lut_.size(); }
  bool track_mode() const { return track_mode_; }

  /// Count of insertions on the directory-miss path whose intersection flag
  /// did not come out true.  Stays zero when associativities double.
  std::uint64_t miss_path_flag_failures() const { return miss_path_flag_failures_; }

  // State introspection for tests and the audit harness.
  const FifoWayList<EntryHandle>& way_list(std::uint32_t level_index, std::uint64_t node,
                                           std::uint32_t assoc_index) const {
    return levels_[level_index].lists[node * grid_.assoc_count() + assoc_index];
  }
  bool track_flag(std::uint32_t level_index, std::uint64_t node) const {
    return levels_[level_index].track[node] != 0;
  }
  bool intersection_flag(std::uint32_t level_index, std::uint64_t node, std::uint32_t slot) const {
    return levels_[level_index].iflags[node * grid_.smallest_assoc() + slot] != 0;
  }

 private:
  struct Level {
    std::uint64_t node_mask = 0;
    std::vector<FifoWayList<EntryHandle>> lists;  // [node * assoc_count + assoc_index]
    std::vector<std::uint8_t> track;              // [node], track mode only
    std::vector<std::uint8_t> iflags;             // [node * smallest_assoc + slot], otherwise
  };

  template <bool kRecord>
  void step(BlockAddress block, AccessOutcome* out);

  /// Inserts h into one list, keeping presence bits in sync.
  void insert_block(FifoWayList<EntryHandle>& list, std::uint32_t config, EntryHandle h) {
    if (list.full()) lut_.set_presence(list.victim(), config, false);
    list.insert(h);
    lut_.set_presence(h, config, true);
  }

  /// Recomputes and stores the intersection flag for h's slot in the
  /// node's smallest list; h must be resident there.  cfg0 is the node's
  /// first config id, row the node's way lists, pr h's presence words.
  bool update_intersection_flag(std::uint32_t cfg0, Level& lv, std::uint64_t node,
                                FifoWayList<EntryHandle>* row, const std::uint64_t* pr,
                                EntryHandle h);

  CacheGrid grid_;
  LookupTable lut_;
  std::vector<Level> levels_;
  bool track_mode_;
  std::uint64_t jmask_;  // presence-nibble bits of a level's non-smallest configs

  std::optional<BlockAddress> prev_block_;
  std::uint64_t total_accesses_ = 0;

  // Counters.  Bulk credits are deferred: a fast path firing at config id c
  // bumps one cell, and report() expands it into the per-configuration
  // numbers by prefix summation, so firings stay O(1) per access.
  std::uint64_t dup_all_ = 0;      // duplicate hits, credited to every config
  std::uint64_t lt_miss_all_ = 0;  // directory misses, debited to every config
  std::vector<std::uint64_t> hits_norm_;      // per config, evaluated hits
  std::vector<std::uint64_t> misses_direct_;  // per config, evaluated misses
  std::vector<std::uint64_t> fire2_;          // p2 firings at config id c
  std::vector<std::uint64_t> fire3_;          // p3 firings at config id c
  std::vector<std::uint64_t> fire1_;          // p1 firings at level l
  std::uint64_t miss_path_flag_failures_ = 0;
};

/// Feeds every block to the engine and assembles the report (wall time
/// covers only this call, so resuming an engine accumulates counters but
/// not time).
SimReport run(Engine& engine, std::span<const BlockAddress> blocks);

}  // namespace fifosim
