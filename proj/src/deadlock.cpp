#include "ahasp/deadlock.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ahasp {

std::vector<Slot> InfeasibleSlots::all() const {
    std::vector<Slot> out = backward;
    out.insert(out.end(), forward.begin(), forward.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool InfeasibleSlots::contains(const Slot& slot) const {
    return std::find(backward.begin(), backward.end(), slot) != backward.end() ||
           std::find(forward.begin(), forward.end(), slot) != forward.end();
}

bool is_feasible(SolutionNet& net) {
    net.reset_marking();
    std::vector<int> enabled;
    for (const auto& route : net.routes(Side::Carrier))
        if (!route.empty() && net.is_enabled(route.front())) enabled.push_back(route.front());
    while (!enabled.empty()) {
        const int id = enabled.back();
        enabled.pop_back();
        net.fire(id);
        const int cs = net.succ(Side::Carrier, id);
        if (cs != 0 && net.is_enabled(cs)) enabled.push_back(cs);
        const int ss = net.succ(Side::Shuttle, id);
        if (ss != 0 && ss != cs && net.is_enabled(ss)) enabled.push_back(ss);
    }
    return net.fired_count() == net.placed_count();
}

namespace {

// Walks the precedence digraph from `seed` (inclusive), following pred or
// succ links on both sides, and records the matching opposite-side gap for
// every task reached. Each transition is pushed at most once.
InfeasibleSlots bidirectional_search(const SolutionNet& net, Side query_side, int backward_seed, int forward_seed) {
    InfeasibleSlots out;
    std::vector<uint8_t> seen(static_cast<size_t>(net.instance().max_task_id()) + 1, 0);
    std::vector<int> stack;

    if (backward_seed != 0) {
        stack.push_back(backward_seed);
        seen[static_cast<size_t>(backward_seed)] = 1;
    }
    while (!stack.empty()) {
        const int b = stack.back();
        stack.pop_back();
        ++out.visited;
        out.backward.push_back(Slot{query_side, net.agv_of(query_side, b), net.position_of(query_side, b)});
        for (Side s : {Side::Carrier, Side::Shuttle}) {
            const int p = net.pred(s, b);
            if (p != 0 && !seen[static_cast<size_t>(p)]) {
                seen[static_cast<size_t>(p)] = 1;
                stack.push_back(p);
            }
        }
    }

    std::fill(seen.begin(), seen.end(), uint8_t{0});
    if (forward_seed != 0) {
        stack.push_back(forward_seed);
        seen[static_cast<size_t>(forward_seed)] = 1;
    }
    while (!stack.empty()) {
        const int f = stack.back();
        stack.pop_back();
        ++out.visited;
        out.forward.push_back(Slot{query_side, net.agv_of(query_side, f), net.position_of(query_side, f) + 1});
        for (Side s : {Side::Carrier, Side::Shuttle}) {
            const int n = net.succ(s, f);
            if (n != 0 && !seen[static_cast<size_t>(n)]) {
                seen[static_cast<size_t>(n)] = 1;
                stack.push_back(n);
            }
        }
    }

    std::sort(out.backward.begin(), out.backward.end());
    out.backward.erase(std::unique(out.backward.begin(), out.backward.end()), out.backward.end());
    std::sort(out.forward.begin(), out.forward.end());
    out.forward.erase(std::unique(out.forward.begin(), out.forward.end()), out.forward.end());
    return out;
}

}  // namespace

InfeasibleSlots brs_tentative(const SolutionNet& net, const Slot& slot) {
    const auto& routes = net.routes(slot.side);
    if (slot.agv < 0 || slot.agv >= static_cast<int>(routes.size()))
        throw std::invalid_argument("slot AGV out of range: " + std::to_string(slot.agv));
    const auto& route = routes[static_cast<size_t>(slot.agv)];
    if (slot.gap < 0 || slot.gap > static_cast<int>(route.size()))
        throw std::invalid_argument("slot gap out of range: " + std::to_string(slot.gap));
    const int pred = slot.gap > 0 ? route[static_cast<size_t>(slot.gap - 1)] : 0;
    const int succ = slot.gap < static_cast<int>(route.size()) ? route[static_cast<size_t>(slot.gap)] : 0;
    return bidirectional_search(net, opposite(slot.side), pred, succ);
}

InfeasibleSlots brs(const SolutionNet& net, int task, const Slot& placed_slot) {
    if (!net.is_placed_on(placed_slot.side, task))
        throw std::invalid_argument("task " + std::to_string(task) + " is not placed on the stated side");
    if (net.is_placed_on(opposite(placed_slot.side), task))
        throw std::invalid_argument("task " + std::to_string(task) + " is placed on both sides");
    if (net.agv_of(placed_slot.side, task) != placed_slot.agv ||
        net.position_of(placed_slot.side, task) != placed_slot.gap)
        throw std::invalid_argument("task " + std::to_string(task) + " is not at the stated slot");
    return bidirectional_search(net, opposite(placed_slot.side), net.pred(placed_slot.side, task),
                                net.succ(placed_slot.side, task));
}

}  // namespace ahasp
