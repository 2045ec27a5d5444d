#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "ahasp/deadlock.hpp"
#include "ahasp/decode.hpp"
#include "ahasp/instance.hpp"
#include "ahasp/io.hpp"
#include "ahasp/net.hpp"
#include "ahasp/rng.hpp"

namespace testutil {

using namespace ahasp;

// Seven tasks on two carriers and two shuttles; the running example used
// throughout: carrier routes (5,4,2) / (6,1,3,7), shuttle routes
// (5,1,4,7) / (6,3,2).
inline DualChain example_chain() {
    return DualChain{{{5, 4, 2}, {6, 1, 3, 7}}, {{5, 1, 4, 7}, {6, 3, 2}}};
}

inline Instance example_instance() {
    GenerateSpec spec;
    spec.tasks = 7;
    spec.carriers = 2;
    spec.shuttles = 2;
    spec.positions = 10;
    spec.tightness = 0.5;
    spec.seed = 42;
    spec.name = "example7";
    return generate_instance(spec);
}

inline Instance random_instance(int n, int carriers, int shuttles, uint64_t seed, double tightness = 0.5) {
    GenerateSpec spec;
    spec.tasks = n;
    spec.carriers = carriers;
    spec.shuttles = shuttles;
    spec.positions = std::max(4, n);
    spec.tightness = tightness;
    spec.seed = seed;
    spec.name = "rnd";
    return generate_instance(spec);
}

// Random dual chain, not necessarily feasible: independent random order on
// each side.
inline DualChain random_chain(const Instance& inst, Rng& rng) {
    DualChain chain;
    chain.carrier_routes.resize(static_cast<size_t>(inst.fleet.carriers()));
    chain.shuttle_routes.resize(static_cast<size_t>(inst.fleet.shuttles()));
    std::vector<int> ids;
    for (const auto& t : inst.tasks) ids.push_back(t.id);
    auto deal = [&](std::vector<std::vector<int>>& routes) {
        std::vector<int> order = ids;
        for (size_t i = 0; i + 1 < order.size(); ++i)
            std::swap(order[i], order[i + rng.uniform_int(order.size() - i)]);
        for (int id : order) routes[rng.uniform_int(routes.size())].push_back(id);
    };
    deal(chain.carrier_routes);
    deal(chain.shuttle_routes);
    return chain;
}

// Random feasible dual chain: both sides order their tasks consistently with
// one global random priority, so the precedence digraph embeds in a total
// order and cannot contain a cycle. Independent of the solver's own
// feasibility machinery.
inline DualChain random_feasible_chain(const Instance& inst, Rng& rng) {
    std::vector<int> priority;
    for (const auto& t : inst.tasks) priority.push_back(t.id);
    for (size_t i = 0; i + 1 < priority.size(); ++i)
        std::swap(priority[i], priority[i + rng.uniform_int(priority.size() - i)]);

    DualChain chain;
    chain.carrier_routes.resize(static_cast<size_t>(inst.fleet.carriers()));
    chain.shuttle_routes.resize(static_cast<size_t>(inst.fleet.shuttles()));
    for (int id : priority) {
        chain.carrier_routes[rng.uniform_int(chain.carrier_routes.size())].push_back(id);
        chain.shuttle_routes[rng.uniform_int(chain.shuttle_routes.size())].push_back(id);
    }
    return chain;
}

// Drops `k` random tasks from both sides (partial chain helper).
inline DualChain drop_tasks(DualChain chain, int k, Rng& rng, std::vector<int>* removed = nullptr) {
    std::vector<int> ids;
    for (const auto& r : chain.carrier_routes) ids.insert(ids.end(), r.begin(), r.end());
    for (int i = 0; i < k && !ids.empty(); ++i) {
        const size_t at = rng.uniform_int(ids.size());
        const int id = ids[at];
        ids.erase(ids.begin() + static_cast<long>(at));
        if (removed) removed->push_back(id);
        auto strip = [id](std::vector<std::vector<int>>& routes) {
            for (auto& r : routes) r.erase(std::remove(r.begin(), r.end(), id), r.end());
        };
        strip(chain.carrier_routes);
        strip(chain.shuttle_routes);
    }
    return chain;
}

// Independent infeasibility oracle: the chain deadlocks iff the precedence
// digraph induced by route adjacency on both sides has a directed cycle.
// Plain Kahn toposort, no Petri-net machinery.
inline bool has_precedence_cycle(const DualChain& chain) {
    std::map<int, std::set<int>> succs;
    std::map<int, int> indeg;
    auto add_side = [&](const std::vector<std::vector<int>>& routes) {
        for (const auto& route : routes)
            for (size_t i = 0; i < route.size(); ++i) {
                indeg.try_emplace(route[i], 0);
                if (i + 1 < route.size() && succs[route[i]].insert(route[i + 1]).second) ++indeg[route[i + 1]];
            }
    };
    add_side(chain.carrier_routes);
    add_side(chain.shuttle_routes);

    std::vector<int> queue;
    for (const auto& [id, d] : indeg)
        if (d == 0) queue.push_back(id);
    size_t done = 0;
    while (!queue.empty()) {
        const int id = queue.back();
        queue.pop_back();
        ++done;
        for (int s : succs[id])
            if (--indeg[s] == 0) queue.push_back(s);
    }
    return done != indeg.size();
}

// Independent timing oracle: agent-level discrete-event simulation of the
// execution timeline. Each AGV holds a queue; any task that is next for both
// its carrier and its shuttle executes; no progress with pending tasks means
// deadlock. Times are stepped through the nine execution stages directly.
struct DesResult {
    bool feasible = false;
    double objective = 0.0;
    std::map<int, TaskTiming> per_task;
};

inline DesResult des_oracle(const Instance& inst, const DualChain& chain) {
    struct Agent {
        std::vector<int> queue;
        size_t at = 0;
        double free_at = 0.0;
        int pos = 0;
    };
    std::vector<Agent> carriers, shuttles;
    for (int r = 0; r < inst.fleet.carriers(); ++r)
        carriers.push_back(Agent{chain.carrier_routes[static_cast<size_t>(r)], 0, 0.0,
                                 inst.fleet.carrier_starts[static_cast<size_t>(r)]});
    for (int r = 0; r < inst.fleet.shuttles(); ++r)
        shuttles.push_back(Agent{chain.shuttle_routes[static_cast<size_t>(r)], 0, 0.0,
                                 inst.fleet.shuttle_starts[static_cast<size_t>(r)]});

    std::map<int, int> shuttle_of;
    for (int r = 0; r < inst.fleet.shuttles(); ++r)
        for (int id : shuttles[static_cast<size_t>(r)].queue) shuttle_of[id] = r;

    DesResult res;
    size_t total = 0;
    for (const auto& c : carriers) total += c.queue.size();

    size_t executed = 0;
    bool progress = true;
    while (progress) {
        progress = false;
        for (auto& carrier : carriers) {
            if (carrier.at >= carrier.queue.size()) continue;
            const int id = carrier.queue[carrier.at];
            Agent& shuttle = shuttles[static_cast<size_t>(shuttle_of.at(id))];
            if (shuttle.at >= shuttle.queue.size() || shuttle.queue[shuttle.at] != id) continue;

            const TaskSpec& task = inst.task(id);
            const double v = inst.timing.velocity;
            const double approach = inst.distance(carrier.pos, shuttle.pos) / v;
            // leave just in time to arrive when the shuttle is ready
            const double attach_start = std::max(carrier.free_at + approach, shuttle.free_at);
            TaskTiming t;
            t.start = attach_start - approach;
            t.wait = t.start - carrier.free_at;
            t.attach = attach_start;
            double clock = attach_start + inst.timing.attach;
            clock += inst.distance(shuttle.pos, task.source) / v;
            clock += inst.timing.pickup;
            clock += inst.distance(task.source, task.dest) / v;
            clock += inst.timing.detach;
            t.detach = clock;
            t.completion = clock + task.handling;
            t.tardiness = std::max(0.0, t.completion - task.due);
            t.distance = inst.distance(carrier.pos, shuttle.pos) + inst.distance(shuttle.pos, task.source) +
                         inst.distance(task.source, task.dest);

            res.per_task[id] = t;
            res.objective += inst.timing.lambda * t.distance + (1.0 - inst.timing.lambda) * t.tardiness;
            carrier.free_at = t.detach;
            carrier.pos = task.dest;
            shuttle.free_at = t.completion;
            shuttle.pos = task.dest;
            ++carrier.at;
            ++shuttle.at;
            ++executed;
            progress = true;
        }
    }
    res.feasible = executed == total;
    if (!res.feasible) res.objective = kInfiniteCost;
    return res;
}

// Exhaustive opposite-side check: tries every gap on the query side by
// physically inserting on both sides and sweeping for feasibility.
inline std::vector<Slot> infeasible_slots_by_insertion(const Instance& inst, const DualChain& chain, int task,
                                                       const Slot& placed_slot) {
    std::vector<Slot> out;
    const Side query = opposite(placed_slot.side);
    SolutionNet probe(inst, chain);
    const auto& routes = probe.routes(query);
    for (int agv = 0; agv < static_cast<int>(routes.size()); ++agv) {
        const int gaps = static_cast<int>(routes[static_cast<size_t>(agv)].size()) + 1;
        for (int gap = 0; gap < gaps; ++gap) {
            SolutionNet net(inst, chain);
            const Slot qslot{query, agv, gap};
            if (placed_slot.side == Side::Carrier)
                net.insert_task(task, placed_slot, qslot);
            else
                net.insert_task(task, qslot, placed_slot);
            if (!is_feasible(net)) out.push_back(qslot);
        }
    }
    return out;
}

inline bool approx(double a, double b, double tol = 1e-9) { return std::abs(a - b) <= tol; }

}  // namespace testutil
