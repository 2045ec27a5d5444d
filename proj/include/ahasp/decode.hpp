#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <utility>
#include <vector>

#include "ahasp/net.hpp"
#include "ahasp/rng.hpp"

namespace ahasp {

constexpr double kInfiniteCost = std::numeric_limits<double>::infinity();

// Times in seconds, distance in meters, all per executed task.
struct TaskTiming {
    double start = 0.0;       // carrier leaves its previous destination
    double attach = 0.0;      // shuttle starts attaching to the carrier
    double detach = 0.0;      // shuttle detached, carrier done with the task
    double completion = 0.0;  // shuttle done handling inside the chamber
    double wait = 0.0;        // carrier dwell before starting
    double distance = 0.0;    // carrier travel for this task
    double tardiness = 0.0;   // positive part of completion minus due
};

struct Schedule {
    std::map<int, TaskTiming> per_task;
    double objective = kInfiniteCost;
    bool feasible = false;
    std::vector<int> firing_order;
    // Structural visits performed by the decode (transitions fired plus
    // places touched); grows linearly in the number of placed tasks.
    uint64_t work = 0;
};

// Carrier travel for one task: own previous destination -> the shuttle's
// waiting position -> pasting chamber -> curing chamber.
double leg_distance(const Instance& inst, int carrier_prev_dest, int shuttle_prev_dest, const TaskSpec& task);

// Dwell before departure so the carrier never arrives at the shuttle's
// position before the shuttle finished its previous task.
double carrier_wait(const Instance& inst, double shuttle_prev_completion, double carrier_prev_detach,
                    int carrier_prev_dest, int shuttle_prev_dest);

// Earliest detach time of the task given both predecessors, taken at
// equality: previous detach + wait + approach + attach + transfer to the
// source + pickup + transfer to the destination + detach.
double detach_time(const Instance& inst, double carrier_prev_detach, double wait, int carrier_prev_dest,
                   int shuttle_prev_dest, const TaskSpec& task);

// completion = detach + handling; tardiness = max(0, completion - due).
std::pair<double, double> completion_and_tardiness(const TaskSpec& task, double detach);

struct DecodeOptions {
    enum class Tie {
        LowestId,  // deterministic default
        Random,    // draw from the enabled set via rng
        Scripted,  // fire exactly `script`; error if an entry is not enabled
    };
    Tie tie = Tie::LowestId;
    Rng* rng = nullptr;
    const std::vector<int>* script = nullptr;
    // When set, receives the initial marking followed by the marking after
    // every firing.
    std::vector<Marking>* trace = nullptr;
};

// Firing-driven decoding: plays the token game from the initial marking,
// timing each task as its transition fires, until the final marking or until
// no transition is enabled. Exhaustion before the final marking is a
// deadlock: the schedule is infeasible and the objective is +infinity.
// Partial chains decode over their placed tasks only.
Schedule fdd(const Instance& inst, SolutionNet& net, const DecodeOptions& opts = {});

// Convenience overload building the net from a chain first.
Schedule fdd(const Instance& inst, const DualChain& chain, const DecodeOptions& opts = {});

// Objective-only decode for hot loops: same firing sweep and timing
// recursion, lowest-id tie-break, no per-task output and no allocation
// churn. Returns +infinity on deadlock.
double fdd_objective(const Instance& inst, SolutionNet& net);

}  // namespace ahasp
