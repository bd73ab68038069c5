#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "fifosim/engine.hpp"

namespace fifosim {

inline constexpr const char* kCsvHeader =
    "line_size,set_size,assoc,accesses,hits,misses,miss_rate,p1_hits,p2_hits,p3_hits,dup_hits";

/// One row per configuration, ordered by (line size, config id); reports
/// must already be sorted by line size.  miss_rate is misses/accesses with
/// six decimals (0.000000 for an empty trace).  Output is byte-stable for
/// identical inputs.
void write_csv(std::ostream& out, std::span<const SimReport> reports);

/// Run metadata as a JSON object: grid shape plus per-engine wall time,
/// distinct-block count and directory footprint.
std::string summary_json(std::span<const SimReport> reports, const std::string& trace_name,
                         std::uint64_t trace_accesses, const std::string& engine_name,
                         unsigned lut_bits);

}  // namespace fifosim
