#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fifosim/config.hpp"
#include "fifosim/engine.hpp"
#include "fifosim/fifo_way_list.hpp"
#include "fifosim/trace.hpp"

namespace fifosim {

struct RefCounts {
  std::uint64_t hits = 0;
  std::uint64_t misses = 0;
};

/// Ground-truth FIFO simulator: every configuration simulated on its own,
/// membership by linear scan, no flags, no sharing, no duplicate filter.
/// Kept deliberately plain; it is the correctness oracle and the speed
/// baseline the engine is measured against.
class ReferenceSimulator {
 public:
  explicit ReferenceSimulator(const CacheGrid& grid);

  void access(BlockAddress block);

  bool contains(std::uint32_t config_id, BlockAddress block) const;

  const CacheGrid& grid() const { return grid_; }
  std::vector<RefCounts> counts() const;

  /// True if some block currently resident in a configuration is missing
  /// from a configuration with >= set size and >= associativity.  FIFO
  /// does not guarantee such nesting, which is what makes the fast paths
  /// worth auditing.
  bool any_inclusion_violation() const;

 private:
  struct ConfigState {
    std::uint64_t set_mask;
    std::vector<FifoWayList<BlockAddress>> sets;
    RefCounts counts;
  };

  CacheGrid grid_;
  std::vector<ConfigState> configs_;
};

std::vector<RefCounts> simulate_reference(std::span<const BlockAddress> blocks,
                                          const CacheGrid& grid);

struct Mismatch {
  std::uint32_t config_id = 0;
  RefCounts engine;
  RefCounts reference;
};

/// Per-configuration hit/miss comparison; empty means exact agreement.
/// Throws ConfigError if the shapes differ.
std::vector<Mismatch> diff_reports(const SimReport& engine_report,
                                   const std::vector<RefCounts>& reference);

struct FastPathViolation {
  std::uint64_t access_index = 0;
  int property = 0;  // 1, 2 or 3
  std::uint32_t config_id = 0;
  BlockAddress block = 0;
};

struct AuditReport {
  // Credited hits per fast path across the run.
  std::uint64_t p1_firings = 0;
  std::uint64_t p2_firings = 0;
  std::uint64_t p3_firings = 0;
  std::vector<FastPathViolation> violations;
  bool inclusion_scanned = false;
  std::uint64_t inclusion_violations = 0;  // accesses after which nesting was broken
};

struct AuditResult {
  SimReport report;          // identical to a plain engine run
  std::vector<RefCounts> reference;
  AuditReport audit;
};

// Inclusion scanning is quadratic in configurations and linear in resident
// blocks, so it only runs on small jobs.
inline constexpr std::uint32_t kInclusionScanMaxConfigs = 8;
inline constexpr std::uint64_t kInclusionScanMaxAccesses = 10000;

/// Runs engine and reference in lockstep.  Every fast-path-credited hit is
/// checked against reference membership at that instant; disagreements are
/// collected, never thrown.  On small jobs (see constants above) the
/// reference state is additionally scanned after every access for nesting
/// violations between comparable configurations.
AuditResult audit_run(std::span<const BlockAddress> blocks, const CacheGrid& grid,
                      unsigned lut_bucket_bits = kDefaultLutBits);

}  // namespace fifosim
