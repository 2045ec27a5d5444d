#pragma once

#include <cstdint>
#include <vector>

#include "ahasp/net.hpp"

namespace ahasp {

// Result of a bidirectional reachability search: opposite-side insertion
// gaps that would close a precedence cycle. Slots are canonical physical
// gaps, so a gap reachable as both a before- and an after-position appears
// once per set and the union is duplicate-free.
struct InfeasibleSlots {
    std::vector<Slot> backward;  // gaps immediately before an ancestor task
    std::vector<Slot> forward;   // gaps immediately after a descendant task
    uint64_t visited = 0;        // transitions touched; at most one visit each

    // Sorted union of both sets.
    std::vector<Slot> all() const;
    bool contains(const Slot& slot) const;
};

// True iff a firing sequence from the initial marking reaches the final
// marking; the same linear token sweep as the decoder, without timing.
bool is_feasible(SolutionNet& net);

// Infeasible opposite-side slots for inserting a task at `slot`, queried
// before the task is physically placed anywhere. The backward search walks
// the ancestors of the slot's preceding task, the forward search the
// descendants of its succeeding task; arcs are contracted through places.
InfeasibleSlots brs_tentative(const SolutionNet& net, const Slot& slot);

// Contract form: `task` must already be placed at `placed_slot` (and only
// there); returns the infeasible slots on the opposite side. Throws
// std::invalid_argument if the task is missing from the stated side, placed
// elsewhere on it, or placed on both sides.
InfeasibleSlots brs(const SolutionNet& net, int task, const Slot& placed_slot);

}  // namespace ahasp
