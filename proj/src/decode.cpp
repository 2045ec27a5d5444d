#include "ahasp/decode.hpp"

#include <algorithm>
#include <stdexcept>

namespace ahasp {

double leg_distance(const Instance& inst, int carrier_prev_dest, int shuttle_prev_dest, const TaskSpec& task) {
    return inst.distance(carrier_prev_dest, shuttle_prev_dest) + inst.distance(shuttle_prev_dest, task.source) +
           inst.distance(task.source, task.dest);
}

double carrier_wait(const Instance& inst, double shuttle_prev_completion, double carrier_prev_detach,
                    int carrier_prev_dest, int shuttle_prev_dest) {
    return std::max(0.0, shuttle_prev_completion - carrier_prev_detach -
                             travel_time(inst, carrier_prev_dest, shuttle_prev_dest));
}

double detach_time(const Instance& inst, double carrier_prev_detach, double wait, int carrier_prev_dest,
                   int shuttle_prev_dest, const TaskSpec& task) {
    const TimingParams& tp = inst.timing;
    return carrier_prev_detach + wait + travel_time(inst, carrier_prev_dest, shuttle_prev_dest) + tp.attach +
           travel_time(inst, shuttle_prev_dest, task.source) + tp.pickup + travel_time(inst, task.source, task.dest) +
           tp.detach;
}

std::pair<double, double> completion_and_tardiness(const TaskSpec& task, double detach) {
    const double completion = detach + task.handling;
    return {completion, std::max(0.0, completion - task.due)};
}

namespace {

// Per-AGV decode state: the clock that gates the next task and the position
// where the AGV currently dwells.
struct AgvState {
    double clock = 0.0;  // carrier: last detach; shuttle: last completion
    int pos = 0;
};

int pop_next(std::vector<int>& enabled, const DecodeOptions& opts) {
    switch (opts.tie) {
        case DecodeOptions::Tie::Random: {
            if (!opts.rng) throw std::invalid_argument("random tie-break requires an rng");
            const size_t i = static_cast<size_t>(opts.rng->uniform_int(enabled.size()));
            std::swap(enabled[i], enabled.back());
            break;
        }
        case DecodeOptions::Tie::LowestId: {
            const auto it = std::min_element(enabled.begin(), enabled.end());
            std::swap(*it, enabled.back());
            break;
        }
        case DecodeOptions::Tie::Scripted:
            break;  // handled by the caller
    }
    const int id = enabled.back();
    enabled.pop_back();
    return id;
}

// The firing sweep shared by the full and the objective-only decode. Calls
// `on_fire(id, timing)` after each firing; returns false on deadlock.
template <typename OnFire>
bool firing_sweep(const Instance& inst, SolutionNet& net, const DecodeOptions& opts, std::vector<AgvState>& carriers,
                  std::vector<AgvState>& shuttles, std::vector<int>& enabled, uint64_t& work, OnFire&& on_fire) {
    net.reset_marking();
    carriers.assign(static_cast<size_t>(inst.fleet.carriers()), AgvState{});
    shuttles.assign(static_cast<size_t>(inst.fleet.shuttles()), AgvState{});
    for (size_t r = 0; r < carriers.size(); ++r) carriers[r].pos = inst.fleet.carrier_starts[r];
    for (size_t r = 0; r < shuttles.size(); ++r) shuttles[r].pos = inst.fleet.shuttle_starts[r];

    // A task is initially enabled iff it heads both its carrier's and its
    // shuttle's route.
    enabled.clear();
    for (const auto& route : net.routes(Side::Carrier)) {
        if (route.empty()) continue;
        ++work;
        if (net.is_enabled(route.front())) enabled.push_back(route.front());
    }

    if (opts.trace) {
        opts.trace->clear();
        opts.trace->push_back(net.marking());
    }

    size_t script_at = 0;
    while (net.fired_count() < net.placed_count()) {
        int id;
        if (opts.tie == DecodeOptions::Tie::Scripted) {
            if (script_at >= opts.script->size())
                throw std::invalid_argument("firing script shorter than the placed task count");
            id = (*opts.script)[script_at++];
            if (!net.is_enabled(id))
                throw std::invalid_argument("scripted transition " + std::to_string(id) + " is not enabled");
        } else {
            if (enabled.empty()) return false;  // deadlock
            id = pop_next(enabled, opts);
        }

        const TaskSpec& task = inst.task(id);
        AgvState& carrier = carriers[static_cast<size_t>(net.agv_of(Side::Carrier, id))];
        AgvState& shuttle = shuttles[static_cast<size_t>(net.agv_of(Side::Shuttle, id))];

        TaskTiming t;
        t.wait = carrier_wait(inst, shuttle.clock, carrier.clock, carrier.pos, shuttle.pos);
        t.start = carrier.clock + t.wait;
        t.attach = t.start + travel_time(inst, carrier.pos, shuttle.pos);
        t.detach = detach_time(inst, carrier.clock, t.wait, carrier.pos, shuttle.pos, task);
        std::tie(t.completion, t.tardiness) = completion_and_tardiness(task, t.detach);
        t.distance = leg_distance(inst, carrier.pos, shuttle.pos, task);

        carrier.clock = t.detach;
        carrier.pos = task.dest;
        shuttle.clock = t.completion;
        shuttle.pos = task.dest;

        net.fire(id);
        work += 3;  // the transition and its two output places
        on_fire(id, t);
        if (opts.trace) opts.trace->push_back(net.marking());

        if (opts.tie != DecodeOptions::Tie::Scripted) {
            const int cs = net.succ(Side::Carrier, id);
            if (cs != 0 && net.is_enabled(cs)) enabled.push_back(cs);
            const int ss = net.succ(Side::Shuttle, id);
            if (ss != 0 && ss != cs && net.is_enabled(ss)) enabled.push_back(ss);
        }
    }
    return true;
}

thread_local std::vector<AgvState> tls_carriers;
thread_local std::vector<AgvState> tls_shuttles;
thread_local std::vector<int> tls_enabled;

}  // namespace

Schedule fdd(const Instance& inst, SolutionNet& net, const DecodeOptions& opts) {
    if (opts.tie == DecodeOptions::Tie::Scripted && !opts.script)
        throw std::invalid_argument("scripted tie-break requires a script");

    Schedule sched;
    sched.objective = 0.0;
    const double lambda = inst.timing.lambda;
    std::vector<AgvState> carriers, shuttles;
    std::vector<int> enabled;
    const bool ok = firing_sweep(inst, net, opts, carriers, shuttles, enabled, sched.work,
                                 [&](int id, const TaskTiming& t) {
                                     sched.objective += lambda * t.distance + (1.0 - lambda) * t.tardiness;
                                     sched.firing_order.push_back(id);
                                     sched.per_task.emplace(id, t);
                                 });
    if (!ok) {
        // Deadlock: tokens remain but nothing can fire. Timings of the tasks
        // fired so far stay available for diagnostics.
        sched.feasible = false;
        sched.objective = kInfiniteCost;
        return sched;
    }
    sched.feasible = true;
    return sched;
}

Schedule fdd(const Instance& inst, const DualChain& chain, const DecodeOptions& opts) {
    SolutionNet net(inst, chain);
    return fdd(inst, net, opts);
}

double fdd_objective(const Instance& inst, SolutionNet& net) {
    double objective = 0.0;
    uint64_t work = 0;
    const double lambda = inst.timing.lambda;
    const DecodeOptions opts;
    const bool ok = firing_sweep(inst, net, opts, tls_carriers, tls_shuttles, tls_enabled, work,
                                 [&](int, const TaskTiming& t) {
                                     objective += lambda * t.distance + (1.0 - lambda) * t.tardiness;
                                 });
    return ok ? objective : kInfiniteCost;
}

}  // namespace ahasp
