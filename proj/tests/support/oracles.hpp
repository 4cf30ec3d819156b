#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

namespace timedc::testing {

// Worst-case time of one oximeter reading, counted call by call:
// 375 byte reads, a status and a checksum check per frame, three stores per
// packet, then averaging, reading back, printing and logging.
struct OximeterCallCounts {
  std::uint64_t receive = 1000, check_status = 700, print_status = 10000, check_sum = 2000,
                print_checksum = 10000, store = 200, average = 800, get = 200, print = 5000, log = 500;

  std::uint64_t total(std::uint64_t checksum_errors, std::uint64_t status_errors, bool retry) const {
    const std::uint64_t packets = 3, frames = 75, bytes = 5;
    std::uint64_t t = 0;
    t += frames * bytes * receive;
    t += frames * check_status;
    t += frames * check_sum;
    t += packets * 3 * store;
    t += 2 * average + 2 * get + 2 * print + 2 * log;
    t += status_errors * print_status;
    t += checksum_errors * (print_checksum + (retry ? bytes * receive : 0));
    return t;
  }
};

// Minimum total time over every legal crossing schedule: a pair crosses with
// the lamp at the slower member's speed, one person brings it back.
inline std::uint64_t bridge_min_schedule(const std::vector<std::uint64_t>& t, bool fastest_ferries) {
  const std::size_t n = t.size();
  const unsigned all = (1U << n) - 1;
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  // `far`: bitmask of persons across, lamp on the start side.
  auto go = [&](auto&& self, unsigned far, std::uint64_t elapsed) -> void {
    for (std::size_t a = 0; a < n; ++a) {
      if (far & (1U << a)) continue;
      if (fastest_ferries && a != 0) continue;
      for (std::size_t b = a + 1; b < n; ++b) {
        if (far & (1U << b)) continue;
        const unsigned across = far | (1U << a) | (1U << b);
        const std::uint64_t cost = elapsed + std::max(t[a], t[b]);
        if (across == all) {
          best = std::min(best, cost);
          continue;
        }
        for (std::size_t r = 0; r < n; ++r) {
          if (!(across & (1U << r))) continue;
          if (fastest_ferries && r != 0) continue;
          self(self, across & ~(1U << r), cost + t[r]);
        }
      }
    }
  };
  go(go, 0, 0);
  return best;
}

}  // namespace timedc::testing
