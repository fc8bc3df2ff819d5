#pragma once

// Published three-set minima and the drawn minimizer shapes.

#include <cstdint>
#include <map>
#include <vector>

#include "splitkit/setcore.hpp"

namespace {

using splitkit::RegionVector;

// Three-set minimum table for k = 6..20.
const std::map<unsigned, unsigned> kThreeSetTable = {{6, 4},     {7, 6},     {8, 12},    {9, 18},    {10, 36},
                                                     {11, 54},   {12, 108},  {13, 180},  {14, 360},  {15, 600},
                                                     {16, 1200}, {17, 2000}, {18, 4000}, {19, 7000}, {20, 14000}};

// Repeating minimizer shapes by k mod 6, with l odd. Regions: a1 = {1},
// b1 = {2,3}, b2 = {1,3}, b3 = {1,2}, c = {1,2,3}.
RegionVector drawn_pattern(unsigned k) {
  std::uint64_t a1 = 0, b1 = 0, b2 = 0, b3 = 0, c = 0;
  switch (k % 6) {
    case 0: { const std::uint64_t l = (k - 3) / 3; a1 = 1; b1 = l + 1; b2 = b3 = l; c = 1; break; }
    case 1: { const std::uint64_t l = (k - 4) / 3; b1 = l + 2; b2 = b3 = l; c = 2; break; }
    case 2: { const std::uint64_t l = (k - 5) / 3; a1 = 1; b1 = l + 3; b2 = b3 = l; c = 1; break; }
    case 3: { const std::uint64_t l = (k - 6) / 3; b1 = l; b2 = b3 = l + 2; c = 2; break; }
    case 4: { const std::uint64_t l = (k - 1) / 3; a1 = 1; b1 = l - 1; b2 = b3 = l; c = 1; break; }
    case 5: { const std::uint64_t l = (k - 2) / 3; b1 = b2 = b3 = l; c = 2; break; }
  }
  std::vector<std::uint64_t> s(8, 0);
  s[1] = a1;
  s[6] = b1;
  s[5] = b2;
  s[3] = b3;
  s[7] = c;
  return RegionVector(3, s);
}

}  // namespace
