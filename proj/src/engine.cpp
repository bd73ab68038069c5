#include "fifosim/engine.hpp"

#include <chrono>

namespace fifosim {

Engine::Engine(const CacheGrid& grid, unsigned lut_bucket_bits)
    : grid_(grid),
      lut_(grid.num_configs(), lut_bucket_bits),
      track_mode_(grid.smallest_assoc() == 2),
      jmask_((std::uint64_t{1} << grid.assoc_count()) - 2),
      hits_norm_(grid.num_configs(), 0),
      misses_direct_(grid.num_configs(), 0),
      fire2_(grid.num_configs(), 0),
      fire3_(grid.num_configs(), 0),
      fire1_(grid.level_count(), 0) {
  levels_.reserve(grid.level_count());
  for (std::uint32_t li = 0; li < grid.level_count(); ++li) {
    Level lv;
    std::uint64_t nodes = grid.set_size(li);
    lv.node_mask = nodes - 1;
    lv.lists.reserve(nodes * grid.assoc_count());
    for (std::uint64_t n = 0; n < nodes; ++n)
      for (std::uint32_t j = 0; j < grid.assoc_count(); ++j)
        lv.lists.emplace_back(grid.assoc(j));
    if (track_mode_)
      lv.track.assign(nodes, 0);
    else
      lv.iflags.assign(nodes * grid.smallest_assoc(), 0);
    levels_.push_back(std::move(lv));
  }
}

bool Engine::update_intersection_flag(std::uint32_t cfg0, Level& lv, std::uint64_t node,
                                      FifoWayList<EntryHandle>* row, const std::uint64_t* pr,
                                      EntryHandle h) {
  std::uint32_t slot = *row[0].find(h);
  std::uint32_t threshold = p1_threshold(grid_.smallest_assoc());

  bool flag = true;
  for (std::uint32_t j = 1; j < grid_.assoc_count(); ++j) {
    std::uint32_t cfg = cfg0 + j;
    if (!((pr[cfg >> 6] >> (cfg & 63)) & 1)) {
      flag = false;
      break;
    }
    const auto& larger = row[j];
    std::uint32_t where = *larger.find(h);
    if (fifo_distance(where, larger.cursor(), larger.capacity()) < threshold) {
      flag = false;
      break;
    }
  }
  lv.iflags[node * grid_.smallest_assoc() + slot] = flag ? 1 : 0;
  return flag;
}

template <bool kRecord>
void Engine::step(BlockAddress block, AccessOutcome* out) {
  const std::uint32_t num_configs = grid_.num_configs();
  const std::uint32_t num_assocs = grid_.assoc_count();
  ++total_accesses_;
  if constexpr (kRecord) out->verdicts.assign(num_configs, Verdict::miss);

  // The most recently accessed block is resident in every configuration, so
  // a repeat of the previous access is a hit everywhere and, hits being
  // free under FIFO, leaves all state untouched.
  if (prev_block_ && *prev_block_ == block) {
    ++dup_all_;
    if constexpr (kRecord)
      for (auto& v : out->verdicts) v = Verdict::hit_dup;
    return;
  }
  prev_block_ = block;

  auto found = lut_.lookup(block);
  if (!found) {
    // Never-seen block: a miss in every configuration.  Insert it into
    // every list, then prime the fast-path flags at each touched node.
    ++lt_miss_all_;
    EntryHandle h = lut_.insert(block);
    const std::uint64_t* pr = lut_.presence_row(h);
    for (std::uint32_t li = 0; li < levels_.size(); ++li) {
      Level& lv = levels_[li];
      std::uint64_t node = block & lv.node_mask;
      FifoWayList<EntryHandle>* row = &lv.lists[node * num_assocs];
      std::uint32_t cfg0 = li * num_assocs;
      for (std::uint32_t j = 0; j < num_assocs; ++j) insert_block(row[j], cfg0 + j, h);
      if (track_mode_) {
        lv.track[node] = 0;
      } else {
        // With every list updated the block sits at distance capacity-1
        // from each cursor, so doubling associativities always clear the
        // threshold and the flag lands true.
        if (!update_intersection_flag(cfg0, lv, node, row, pr, h)) ++miss_path_flag_failures_;
      }
    }
    return;
  }

  EntryHandle h = *found;
  const std::uint64_t* pr = lut_.presence_row(h);
  std::uint64_t* const hn = hits_norm_.data();
  std::uint64_t* const md = misses_direct_.data();
  const std::size_t level_count = levels_.size();
  for (std::uint32_t li = 0; li < level_count; ++li) {
    Level& lv = levels_[li];
    std::uint64_t node = block & lv.node_mask;
    FifoWayList<EntryHandle>* row = &lv.lists[node * num_assocs];
    std::uint32_t cfg0 = li * num_assocs;

    // Presence bits for this level's configurations in one register: bit j
    // is configuration cfg0+j, stitched across a word boundary if the level
    // straddles one.  Inserts below only set bits the walk already consumed,
    // so the copy never goes stale within the level.
    std::uint32_t sh = cfg0 & 63;
    std::uint64_t nib = pr[cfg0 >> 6] >> sh;
    if (sh + num_assocs > 64) nib |= pr[(cfg0 >> 6) + 1] << (64 - sh);
    bool resident = nib & 1;

    if (track_mode_) {
      FifoWayList<EntryHandle>& small = row[0];
      if (resident) {
        if (lv.track[node]) {
          // p3: both occupants of this 2-way list are resident in every
          // remaining configuration; stop here.
          ++hn[cfg0];
          ++fire3_[cfg0];
          if constexpr (kRecord) {
            out->verdicts[cfg0] = Verdict::hit;
            for (std::uint32_t c = cfg0 + 1; c < num_configs; ++c)
              out->verdicts[c] = Verdict::hit_p3;
          }
          return;
        }
        auto mri = small.mri_slot();
        if (mri && small.slot(*mri) == h) {
          // p2: the MRI block is resident in every remaining configuration.
          ++hn[cfg0];
          ++fire2_[cfg0];
          if constexpr (kRecord) {
            out->verdicts[cfg0] = Verdict::hit;
            for (std::uint32_t c = cfg0 + 1; c < num_configs; ++c)
              out->verdicts[c] = Verdict::hit_p2;
          }
          return;
        }
        // Hit on the non-MRI occupant: from here until the next insertion
        // into this list, both occupants are known resident everywhere
        // after this pass completes, so arm the track flag and keep going.
        lv.track[node] = 1;
        ++hn[cfg0];
        if constexpr (kRecord) out->verdicts[cfg0] = Verdict::hit;
      } else {
        ++md[cfg0];
        insert_block(small, cfg0, h);
        lv.track[node] = 0;
      }
    } else {
      if (resident) {
        FifoWayList<EntryHandle>& small = row[0];
        std::uint32_t slot = *small.find(h);
        if (lv.iflags[node * grid_.smallest_assoc() + slot]) {
          // p1: resident in every larger list of this node; skip to the
          // next level.
          ++hn[cfg0];
          ++fire1_[li];
          if constexpr (kRecord) {
            out->verdicts[cfg0] = Verdict::hit;
            for (std::uint32_t j = 1; j < num_assocs; ++j)
              out->verdicts[cfg0 + j] = Verdict::hit_p1;
          }
          continue;
        }
        ++hn[cfg0];
        if constexpr (kRecord) out->verdicts[cfg0] = Verdict::hit;
      } else {
        ++md[cfg0];
        insert_block(row[0], cfg0, h);
        update_intersection_flag(cfg0, lv, node, row, pr, h);
      }
    }

    if ((nib & jmask_) == jmask_) {
      // Resident in every larger list: a straight run of hit counts.
      for (std::uint32_t j = 1; j < num_assocs; ++j) {
        ++hn[cfg0 + j];
        if constexpr (kRecord) out->verdicts[cfg0 + j] = Verdict::hit;
      }
    } else {
      for (std::uint32_t j = 1; j < num_assocs; ++j) {
        std::uint32_t cfg = cfg0 + j;
        if ((nib >> j) & 1) {
          ++hn[cfg];
          if constexpr (kRecord) out->verdicts[cfg] = Verdict::hit;
        } else {
          ++md[cfg];
          insert_block(row[j], cfg, h);
        }
      }
    }
  }
}

template void Engine::step<false>(BlockAddress, AccessOutcome*);
template void Engine::step<true>(BlockAddress, AccessOutcome*);

SimReport Engine::report() const {
  SimReport r;
  r.grid = grid_;
  r.stats.resize(grid_.num_configs());
  r.distinct_blocks = lut_.size();
  r.lut_bytes = lut_.memory_bytes();

  std::uint64_t fire2_before = 0, fire3_before = 0;
  for (std::uint32_t c = 0; c < grid_.num_configs(); ++c) {
    ConfigStats& s = r.stats[c];
    s.accesses = total_accesses_;
    s.dup_hits = dup_all_;
    s.misses = lt_miss_all_ + misses_direct_[c];
    s.p1_hits = grid_.assoc_index_of(c) > 0 ? fire1_[grid_.level_of(c)] : 0;
    s.p2_hits = fire2_before;
    s.p3_hits = fire3_before;
    s.hits = hits_norm_[c] + s.p1_hits + s.p2_hits + s.p3_hits + s.dup_hits;
    assert(s.hits + s.misses == s.accesses);
    fire2_before += fire2_[c];
    fire3_before += fire3_[c];
  }
  return r;
}

SimReport run(Engine& engine, std::span<const BlockAddress> blocks) {
  auto start = std::chrono::steady_clock::now();
  for (BlockAddress b : blocks) engine.access(b);
  auto stop = std::chrono::steady_clock::now();
  SimReport r = engine.report();
  r.wall_seconds = std::chrono::duration<double>(stop - start).count();
  return r;
}

}  // namespace fifosim
