#include "fifosim/report.hpp"

#include <cinttypes>
#include <cstdio>
#include <ostream>

#include <json.hpp>

namespace fifosim {

void write_csv(std::ostream& out, std::span<const SimReport> reports) {
  out << kCsvHeader << '\n';
  char line[256];
  for (const SimReport& r : reports) {
    for (std::uint32_t c = 0; c < r.stats.size(); ++c) {
      const ConfigStats& s = r.stats[c];
      double miss_rate =
          s.accesses == 0 ? 0.0 : static_cast<double>(s.misses) / static_cast<double>(s.accesses);
      int n = std::snprintf(line, sizeof line,
                            "%" PRIu64 ",%" PRIu64 ",%" PRIu32 ",%" PRIu64 ",%" PRIu64 ",%" PRIu64
                            ",%.6f,%" PRIu64 ",%" PRIu64 ",%" PRIu64 ",%" PRIu64 "\n",
                            r.grid.line_size(), r.grid.set_size(r.grid.level_of(c)),
                            r.grid.assoc(r.grid.assoc_index_of(c)), s.accesses, s.hits, s.misses,
                            miss_rate, s.p1_hits, s.p2_hits, s.p3_hits, s.dup_hits);
      out.write(line, n);
    }
  }
}

std::string summary_json(std::span<const SimReport> reports, const std::string& trace_name,
                         std::uint64_t trace_accesses, const std::string& engine_name,
                         unsigned lut_bits) {
  nlohmann::json j;
  j["trace"] = trace_name;
  j["accesses"] = trace_accesses;
  j["engine"] = engine_name;
  j["lut_bits"] = lut_bits;

  nlohmann::json engines = nlohmann::json::array();
  for (const SimReport& r : reports) {
    nlohmann::json e;
    e["line_size"] = r.grid.line_size();
    e["set_sizes"] = r.grid.set_sizes();
    e["assocs"] = r.grid.assocs();
    e["num_configs"] = r.grid.num_configs();
    e["wall_seconds"] = r.wall_seconds;
    e["distinct_blocks"] = r.distinct_blocks;
    e["lut_bytes"] = r.lut_bytes;
    engines.push_back(std::move(e));
  }
  j["engines"] = std::move(engines);
  return j.dump(2);
}

}  // namespace fifosim
