#pragma once

#include <string>
#include <vector>

namespace ahasp {

// One transport task: move plates from a pasting chamber to a curing chamber,
// executed jointly by one carrier and one shuttle.
struct TaskSpec {
    int id = 0;             // unique, >= 1 (0 is the virtual-origin sentinel)
    int source = 0;         // pasting chamber position
    int dest = 0;           // curing chamber position
    double due = 0.0;       // curing due time, seconds
    double handling = 0.0;  // in-chamber handling duration, seconds
};

struct Fleet {
    std::vector<int> carrier_starts;  // initial position per carrier
    std::vector<int> shuttle_starts;  // initial position per shuttle

    int carriers() const { return static_cast<int>(carrier_starts.size()); }
    int shuttles() const { return static_cast<int>(shuttle_starts.size()); }
};

struct TimingParams {
    double velocity = 1.2;  // m/s
    double attach = 8.0;    // s
    double detach = 8.0;    // s
    double pickup = 30.0;   // s
    double lambda = 0.4;    // objective weight on distance vs tardiness
};

// Immutable problem data. Distances are an explicit symmetric matrix in
// meters; routing happens offline and is not modeled here.
struct Instance {
    std::string name;
    std::vector<TaskSpec> tasks;
    Fleet fleet;
    std::vector<std::vector<double>> dist;
    TimingParams timing;

    int task_count() const { return static_cast<int>(tasks.size()); }
    int position_count() const { return static_cast<int>(dist.size()); }
    int max_task_id() const;

    bool has_task(int id) const;
    // Throws std::out_of_range for an unknown id.
    const TaskSpec& task(int id) const;

    // Bounds-checked matrix lookup; throws std::out_of_range.
    double distance(int a, int b) const;
};

// Returns one description per violated invariant; empty means valid.
// Violations are data, not failures: this never throws.
std::vector<std::string> validate_instance(const Instance& inst);

// Travel time between two positions: distance over velocity.
double travel_time(const Instance& inst, int a, int b);

}  // namespace ahasp
