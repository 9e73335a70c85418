#ifndef SEARCHLAB_LUBY_H
#define SEARCHLAB_LUBY_H

#include <cstdint>

namespace searchlab {

/*
  The Luby universal restart sequence, 1-indexed:
    1, 1, 2, 1, 1, 2, 4, 1, 1, 2, 1, 1, 2, 4, 8, ...
  Defined by luby(i) = 2^(k-1) when i = 2^k - 1, and
  luby(i) = luby(i - 2^(k-1) + 1) for 2^(k-1) <= i < 2^k - 1.
  Each block doubles the largest value, so sums grow within a constant
  factor of any fixed restart length chosen in hindsight.
*/
inline uint64_t luby(uint64_t i) {
    for (;;) {
        // Smallest focus = 2^k with i <= focus - 1.
        uint64_t focus = 2;
        while (focus - 1 < i)
            focus <<= 1;
        if (focus - 1 == i)
            return focus >> 1;
        i = i - (focus >> 1) + 1;
    }
}

}  // namespace searchlab

#endif
