#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ahasp/decode.hpp"
#include "ahasp/deadlock.hpp"
#include "ahasp/net.hpp"
#include "ahasp/rng.hpp"

namespace ahasp {

enum class RemovalOp : int { Random = 0, HighestCost, LongestDistance, LargestTardiness, Shaw };
enum class InsertionOp : int { Greedy = 0, UrgencyGreedy, CostGreedy };

constexpr int kRemovalOps = 5;
constexpr int kInsertionOps = 3;

std::string name_of(RemovalOp op);
std::string name_of(InsertionOp op);

struct OperatorStats {
    double weight = 1.0;  // roulette weight, stays positive
    double score = 0.0;   // accumulated segment score
    int uses = 0;         // segment usage count
    int total_uses = 0;
};

struct OperatorBank {
    std::array<OperatorStats, kRemovalOps> removal;
    std::array<OperatorStats, kInsertionOps> insertion;
};

struct AlnsConfig {
    double mu = 20.0;    // temperature coefficient
    double phi = 0.3;    // removal proportion
    double rho = 0.1;    // reaction factor
    int kappa = 15;      // weight-update segment length, iterations
    double psi = 0.3;    // Shaw relatedness weight
    double zeta = 10.0;  // budget coefficient
    double sigma_best = 33.0;
    double sigma_improving = 9.0;
    double sigma_accepted = 13.0;
    uint64_t seed = 1;

    enum class Budget { WallClockMs, Iterations };
    Budget budget_mode = Budget::WallClockMs;
    int64_t budget_ms = -1;    // < 0: use the zeta rule
    int64_t iterations = 100;  // Iterations mode only

    bool use_brs = true;       // full-scan insertion when false (benchmarking)
    bool record_log = true;
};

// Throws std::invalid_argument when a parameter is outside its range.
void validate_config(const AlnsConfig& cfg);

// Default wall budget in milliseconds: zeta * n^2 * (carriers + shuttles).
int64_t default_budget_ms(const Instance& inst, double zeta);

// Fixed acceptance temperature: mu * sum of direct source-destination
// distances over tasks, divided by n * (carriers + shuttles).
double fixed_temperature(const Instance& inst, double mu);

// Simulated-annealing acceptance at a fixed temperature; improving or equal
// candidates always pass, worse ones with probability exp(-delta / t).
bool accept(double current_cost, double candidate_cost, double temperature, Rng& rng);

// Roulette-wheel draw proportional to weight; bumps the usage counters.
int select_operator(std::array<OperatorStats, kRemovalOps>& ops, Rng& rng);
int select_operator(std::array<OperatorStats, kInsertionOps>& ops, Rng& rng);

// Segment update: weight <- (1-rho)*weight + rho*score/uses for used
// operators, then score/uses reset. Unused operators keep their weight.
void update_weights(OperatorBank& bank, double rho);

// A removed task together with its cost in the solution it was removed
// from (lambda-weighted distance plus tardiness), which drives CostGreedy.
struct RemovedTask {
    int id = 0;
    double cost = 0.0;
};

int removal_count(double phi, int n);

// Removal operators: splice `count` tasks out of the net and return them
// with their cached costs. `sched` is the schedule of the pre-removal net.
std::vector<RemovedTask> remove_random(SolutionNet& net, const Schedule& sched, int count, Rng& rng);
std::vector<RemovedTask> remove_highest_cost(SolutionNet& net, const Schedule& sched, int count);
std::vector<RemovedTask> remove_longest_distance(SolutionNet& net, const Schedule& sched, int count);
std::vector<RemovedTask> remove_largest_tardiness(SolutionNet& net, const Schedule& sched, int count);
std::vector<RemovedTask> remove_shaw(SolutionNet& net, const Schedule& sched, int count, double psi, Rng& rng);

// Shaw relatedness of two tasks.
double shaw_relatedness(const Instance& inst, const TaskSpec& a, const TaskSpec& b, double psi);

// Optional audit for the repair step: when attached, every committed
// insertion is re-derived by an exhaustive scan without reachability
// pruning and compared.
struct InsertAudit {
    uint64_t insertions = 0;
    uint64_t mismatches = 0;
};

// Repair: reinsert every removed task at the feasible slot pair with the
// lowest resulting objective. Carrier slots are scanned in order; for each,
// the reachability search prunes the shuttle slots that would deadlock
// (unless `use_brs` is off, in which case every pair is decoded). Returns
// the objective of the repaired net. `evaluations`, when given, counts the
// decoded slot pairs.
double insert_greedy(SolutionNet& net, std::vector<RemovedTask>& pool, InsertionOp op, Rng& rng, bool use_brs,
                     uint64_t* evaluations = nullptr, InsertAudit* audit = nullptr);

// Greedy construction: places all tasks in nondecreasing due-date order,
// each at its best feasible slot pair.
DualChain initial_solution(const Instance& inst);

struct IterationRow {
    int64_t iteration = 0;
    double elapsed_ms = 0.0;
    RemovalOp removal = RemovalOp::Random;
    InsertionOp insertion = InsertionOp::Greedy;
    double current_objective = 0.0;
    double best_objective = 0.0;
    bool accepted = false;
};

struct AlnsResult {
    DualChain best_chain;
    Schedule best_schedule;
    int64_t iterations = 0;
    double elapsed_ms = 0.0;
    double initial_objective = 0.0;
    OperatorBank bank;
    std::vector<IterationRow> log;
    uint64_t evaluations = 0;  // decoded slot pairs across all repairs
};

AlnsResult solve(const Instance& inst, const AlnsConfig& cfg = {});

}  // namespace ahasp
