#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fifosim {

/// Thrown for invalid grid parameters or malformed size lists.
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline bool is_power_of_two(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

/// log2 of a power of two.
unsigned log2_exact(std::uint64_t v);

/// The set of cache configurations simulated together in one pass: a single
/// line size crossed with every (set size, associativity) pair.  Set sizes
/// and associativities are distinct powers of two, held sorted ascending.
/// A configuration is addressed by its id:
///
///   config_id = level_index * assoc_count + assoc_index
///
/// so ascending id is exactly the engine's evaluation order (set sizes
/// outer, associativities inner).  Set size 1 means fully associative.
class CacheGrid {
 public:
  CacheGrid() = default;
  CacheGrid(std::uint64_t line_size_bytes, std::vector<std::uint64_t> set_sizes,
            std::vector<std::uint32_t> assocs);

  std::uint64_t line_size() const { return line_size_; }
  unsigned line_shift() const { return line_shift_; }

  std::uint32_t level_count() const { return static_cast<std::uint32_t>(set_sizes_.size()); }
  std::uint32_t assoc_count() const { return static_cast<std::uint32_t>(assocs_.size()); }
  std::uint32_t num_configs() const { return level_count() * assoc_count(); }

  const std::vector<std::uint64_t>& set_sizes() const { return set_sizes_; }
  const std::vector<std::uint32_t>& assocs() const { return assocs_; }

  std::uint64_t set_size(std::uint32_t level_index) const { return set_sizes_[level_index]; }
  std::uint32_t assoc(std::uint32_t assoc_index) const { return assocs_[assoc_index]; }
  std::uint32_t smallest_assoc() const { return assocs_.front(); }

  std::uint32_t config_id(std::uint32_t level_index, std::uint32_t assoc_index) const;
  std::uint32_t level_of(std::uint32_t config_id) const { return config_id / assoc_count(); }
  std::uint32_t assoc_index_of(std::uint32_t config_id) const { return config_id % assoc_count(); }

 private:
  std::uint64_t line_size_ = 0;
  unsigned line_shift_ = 0;
  std::vector<std::uint64_t> set_sizes_;
  std::vector<std::uint32_t> assocs_;
};

/// Validates and normalizes grid parameters: every value must be a power of
/// two, associativities must be >= 2, no list may be empty.  Duplicates are
/// dropped and the lists sorted ascending.  Throws ConfigError otherwise.
CacheGrid validate_grid(std::uint64_t line_size_bytes, std::vector<std::uint64_t> set_sizes,
                        std::vector<std::uint64_t> assocs);

/// Parses a size list like "4,8,16" or "1..16384" (or a mix of both).  A
/// range "lo..hi" expands to every power of two in the closed interval.
/// Values may repeat across items; callers normalize via validate_grid.
std::vector<std::uint64_t> parse_size_list(const std::string& text);

}  // namespace fifosim
