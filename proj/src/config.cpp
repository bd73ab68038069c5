#include "fifosim/config.hpp"

#include <algorithm>
#include <charconv>

namespace fifosim {

unsigned log2_exact(std::uint64_t v) {
  unsigned n = 0;
  while (v > 1) {
    v >>= 1;
    ++n;
  }
  return n;
}

CacheGrid::CacheGrid(std::uint64_t line_size_bytes, std::vector<std::uint64_t> set_sizes,
                     std::vector<std::uint32_t> assocs)
    : line_size_(line_size_bytes),
      line_shift_(log2_exact(line_size_bytes)),
      set_sizes_(std::move(set_sizes)),
      assocs_(std::move(assocs)) {}

std::uint32_t CacheGrid::config_id(std::uint32_t level_index, std::uint32_t assoc_index) const {
  if (level_index >= level_count() || assoc_index >= assoc_count())
    throw ConfigError("config_id: index out of range");
  return level_index * assoc_count() + assoc_index;
}

namespace {

void sort_unique(std::vector<std::uint64_t>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

CacheGrid validate_grid(std::uint64_t line_size_bytes, std::vector<std::uint64_t> set_sizes,
                        std::vector<std::uint64_t> assocs) {
  if (!is_power_of_two(line_size_bytes))
    throw ConfigError("line size must be a power of two, got " + std::to_string(line_size_bytes));
  if (set_sizes.empty()) throw ConfigError("set size list is empty");
  if (assocs.empty()) throw ConfigError("associativity list is empty");

  sort_unique(set_sizes);
  sort_unique(assocs);

  for (auto s : set_sizes)
    if (!is_power_of_two(s))
      throw ConfigError("set size must be a power of two, got " + std::to_string(s));

  std::vector<std::uint32_t> assocs32;
  assocs32.reserve(assocs.size());
  for (auto a : assocs) {
    if (!is_power_of_two(a) || a < 2)
      throw ConfigError("associativity must be a power of two >= 2, got " + std::to_string(a));
    if (a > (std::uint64_t{1} << 31)) throw ConfigError("associativity too large");
    assocs32.push_back(static_cast<std::uint32_t>(a));
  }

  return CacheGrid(line_size_bytes, std::move(set_sizes), std::move(assocs32));
}

namespace {

std::uint64_t parse_u64(const std::string& item, std::size_t from, std::size_t to) {
  std::uint64_t value = 0;
  const char* first = item.data() + from;
  const char* last = item.data() + to;
  auto [ptr, ec] = std::from_chars(first, last, value, 10);
  if (ec != std::errc{} || ptr != last)
    throw ConfigError("invalid size value '" + item.substr(from, to - from) + "'");
  return value;
}

}  // namespace

std::vector<std::uint64_t> parse_size_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    if (comma == pos) throw ConfigError("empty item in size list '" + text + "'");
    std::size_t dots = text.find("..", pos);
    if (dots != std::string::npos && dots < comma) {
      std::uint64_t lo = parse_u64(text, pos, dots);
      std::uint64_t hi = parse_u64(text, dots + 2, comma);
      if (lo > hi) throw ConfigError("range with lo > hi in '" + text + "'");
      // All powers of two inside [lo, hi].
      bool any = false;
      for (std::uint64_t p = 1; p <= hi; p <<= 1) {
        if (p >= lo) {
          out.push_back(p);
          any = true;
        }
        if (p > (std::uint64_t{1} << 62)) break;
      }
      if (!any) throw ConfigError("range '" + text + "' contains no power of two");
    } else {
      out.push_back(parse_u64(text, pos, comma));
    }
    pos = comma + 1;
    if (comma == text.size()) break;
  }
  if (out.empty()) throw ConfigError("size list is empty");
  return out;
}

}  // namespace fifosim
