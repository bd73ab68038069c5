#include "fifosim/oracle.hpp"

namespace fifosim {

ReferenceSimulator::ReferenceSimulator(const CacheGrid& grid) : grid_(grid) {
  configs_.reserve(grid.num_configs());
  for (std::uint32_t li = 0; li < grid.level_count(); ++li) {
    for (std::uint32_t j = 0; j < grid.assoc_count(); ++j) {
      ConfigState cs;
      cs.set_mask = grid.set_size(li) - 1;
      cs.sets.assign(grid.set_size(li), FifoWayList<BlockAddress>(grid.assoc(j)));
      configs_.push_back(std::move(cs));
    }
  }
}

void ReferenceSimulator::access(BlockAddress block) {
  for (auto& cs : configs_) {
    auto& set = cs.sets[block & cs.set_mask];
    if (set.contains(block)) {
      ++cs.counts.hits;
    } else {
      ++cs.counts.misses;
      set.insert(block);
    }
  }
}

bool ReferenceSimulator::contains(std::uint32_t config_id, BlockAddress block) const {
  const auto& cs = configs_[config_id];
  return cs.sets[block & cs.set_mask].contains(block);
}

std::vector<RefCounts> ReferenceSimulator::counts() const {
  std::vector<RefCounts> out;
  out.reserve(configs_.size());
  for (const auto& cs : configs_) out.push_back(cs.counts);
  return out;
}

bool ReferenceSimulator::any_inclusion_violation() const {
  std::uint32_t n = grid_.num_configs();
  for (std::uint32_t a = 0; a < n; ++a) {
    std::uint64_t sa = grid_.set_size(grid_.level_of(a));
    std::uint32_t aa = grid_.assoc(grid_.assoc_index_of(a));
    for (std::uint32_t b = 0; b < n; ++b) {
      if (a == b) continue;
      std::uint64_t sb = grid_.set_size(grid_.level_of(b));
      std::uint32_t ab = grid_.assoc(grid_.assoc_index_of(b));
      if (sb < sa || ab < aa) continue;  // b must dominate a
      for (const auto& set : configs_[a].sets) {
        for (std::uint32_t s = 0; s < set.occupied(); ++s)
          if (!contains(b, set.slot(s))) return true;
      }
    }
  }
  return false;
}

std::vector<RefCounts> simulate_reference(std::span<const BlockAddress> blocks,
                                          const CacheGrid& grid) {
  ReferenceSimulator ref(grid);
  for (BlockAddress b : blocks) ref.access(b);
  return ref.counts();
}

std::vector<Mismatch> diff_reports(const SimReport& engine_report,
                                   const std::vector<RefCounts>& reference) {
  if (engine_report.stats.size() != reference.size())
    throw ConfigError("diff_reports: reports cover different numbers of configurations");
  std::vector<Mismatch> out;
  for (std::uint32_t c = 0; c < reference.size(); ++c) {
    const ConfigStats& s = engine_report.stats[c];
    const RefCounts& r = reference[c];
    if (s.hits != r.hits || s.misses != r.misses)
      out.push_back(Mismatch{c, RefCounts{s.hits, s.misses}, r});
  }
  return out;
}

AuditResult audit_run(std::span<const BlockAddress> blocks, const CacheGrid& grid,
                      unsigned lut_bucket_bits) {
  Engine engine(grid, lut_bucket_bits);
  ReferenceSimulator ref(grid);
  AuditResult result;
  AccessOutcome out;

  bool scan = grid.num_configs() <= kInclusionScanMaxConfigs &&
              blocks.size() <= kInclusionScanMaxAccesses;
  result.audit.inclusion_scanned = scan;

  for (std::uint64_t i = 0; i < blocks.size(); ++i) {
    BlockAddress b = blocks[i];
    engine.process_access_into(b, out);

    // Check credited hits against the reference before it absorbs this
    // access: a wrongly credited block would otherwise be inserted by the
    // reference miss and the disagreement masked.
    for (std::uint32_t c = 0; c < out.verdicts.size(); ++c) {
      Verdict v = out.verdicts[c];
      if (!is_fast_path_hit(v)) continue;
      int property = v == Verdict::hit_p1 ? 1 : v == Verdict::hit_p2 ? 2 : 3;
      if (property == 1)
        ++result.audit.p1_firings;
      else if (property == 2)
        ++result.audit.p2_firings;
      else
        ++result.audit.p3_firings;
      if (!ref.contains(c, b))
        result.audit.violations.push_back(FastPathViolation{i, property, c, b});
    }

    ref.access(b);
    if (scan && ref.any_inclusion_violation()) ++result.audit.inclusion_violations;
  }

  result.report = engine.report();
  result.reference = ref.counts();
  return result;
}

}  // namespace fifosim
