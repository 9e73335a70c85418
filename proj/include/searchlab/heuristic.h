#ifndef SEARCHLAB_HEURISTIC_H
#define SEARCHLAB_HEURISTIC_H

#include <concepts>
#include <cstdint>
#include <limits>

namespace searchlab {

// Heuristic values are non-negative integers with an explicit infinity
// sentinel marking recognized dead ends.
using HeuristicValue = int64_t;
inline constexpr HeuristicValue kInfiniteH = std::numeric_limits<HeuristicValue>::max();

inline bool is_infinite_h(HeuristicValue h) { return h == kInfiniteH; }

template <typename H, typename Task>
concept HeuristicFor = requires(const H& h, const typename Task::State& s) {
    { h.evaluate(s) } -> std::convertible_to<HeuristicValue>;
};

}  // namespace searchlab

#endif
