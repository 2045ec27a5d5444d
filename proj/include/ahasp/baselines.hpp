#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ahasp/decode.hpp"
#include "ahasp/net.hpp"

namespace ahasp {

struct EddbidResult {
    DualChain chain;
    Schedule schedule;
};

// Earliest-due-date bidding dispatch: tasks are processed in nondecreasing
// due-date order (ties by id); every carrier/shuttle pair bids the objective
// increase of appending the task at both route tails and the lowest bid wins
// (ties by lowest carrier, then shuttle). Tail appends never deadlock, so
// the result is always feasible.
EddbidResult eddbid(const Instance& inst);

struct OracleLimits {
    int max_tasks = 5;
    uint64_t max_candidates = 5'000'000;  // dual-chain combinations
};

struct OracleResult {
    double optimal_objective = kInfiniteCost;
    DualChain optimal_chain;
    uint64_t enumerated = 0;  // feasible candidates examined
};

// Exhaustive oracle: enumerates every assignment and ordering on both sides,
// decodes the feasible ones, and returns the minimum (ties resolved toward
// the lexicographically smallest chain). Throws std::length_error when the
// instance exceeds the limits.
OracleResult brute_force(const Instance& inst, const OracleLimits& limits = {});

// Default big-M: the sum of all pairwise travel times plus total handling
// plus n * (attach + pickup + detach).
double default_big_l(const Instance& inst);

// Serializes the full model in CPLEX LP format. big_l < 0 uses the default.
std::string export_milp(const Instance& inst, double big_l = -1.0);

// Substitutes a decoded schedule into the same constraint set the exporter
// emits and returns one description per violated row (empty when the
// schedule satisfies the model).
std::vector<std::string> check_schedule_against_milp(const Instance& inst, const DualChain& chain,
                                                     const Schedule& schedule, double big_l = -1.0);

}  // namespace ahasp
