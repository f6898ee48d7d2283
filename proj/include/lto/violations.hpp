#pragma once

#include <array>
#include <stdexcept>

namespace lto {

// Failure counts of the five constraints for one chromosome.
struct ViolationCounts {
  long bg01 = 0;   // gate occupied by another movement between LAN and TOF
  long bg02 = 0;   // single-operation movements sharing a gate out of order
  long bg03 = 0;   // movements above the per-gate limit
  long rnw01 = 0;  // runway not allowed for the aircraft
  long rnw02 = 0;  // consecutive same-runway operations above the limit

  long bg() const { return bg01 + bg02 + bg03; }
  long rnw() const { return rnw01 + rnw02; }
  long total() const { return bg() + rnw(); }
  bool feasible() const { return total() == 0; }
  std::array<long, 5> as_array() const { return {bg01, bg02, bg03, rnw01, rnw02}; }
  bool operator==(const ViolationCounts&) const = default;
};

struct Limits {
  int max_bg = 10;   // movements per gate over the day
  int max_rnw = 7;   // consecutive operations on one runway

  void validate() const {
    if (max_bg < 1 || max_rnw < 1) throw std::invalid_argument("limits must be at least 1");
  }
};

}  // namespace lto
