#ifndef SEARCHLAB_PATH_H
#define SEARCHLAB_PATH_H

#include <stdexcept>
#include <utility>
#include <vector>

namespace searchlab {

/*
  A path is a non-empty state sequence s_0, ..., s_k where each s_{i+1} is a
  successor of s_i in some task. Length conventions: num_states() = k + 1,
  num_transitions() = k. Solution lengths are reported in transitions.
*/
template <typename State>
struct Path {
    std::vector<State> states;

    size_t num_states() const { return states.size(); }
    size_t num_transitions() const { return states.empty() ? 0 : states.size() - 1; }
    const State& first() const { return states.front(); }
    const State& last() const { return states.back(); }
};

enum class ConcatForm {
    SHARED_ENDPOINT,  // last(a) must equal first(b); the duplicate is dropped
    FRESH,            // b is appended as-is (caller guarantees adjacency)
};

template <typename State>
Path<State> concat(const Path<State>& a, const Path<State>& b,
                   ConcatForm form = ConcatForm::SHARED_ENDPOINT) {
    if (a.states.empty() || b.states.empty())
        throw std::invalid_argument("concat: paths must be non-empty");
    Path<State> out;
    out.states.reserve(a.states.size() + b.states.size());
    out.states = a.states;
    if (form == ConcatForm::SHARED_ENDPOINT) {
        if (!(a.last() == b.first()))
            throw std::invalid_argument(
                "concat: shared-endpoint form requires last(a) == first(b)");
        out.states.insert(out.states.end(), b.states.begin() + 1, b.states.end());
    } else {
        out.states.insert(out.states.end(), b.states.begin(), b.states.end());
    }
    return out;
}

}  // namespace searchlab

#endif
